#pragma once

#include <ostream>
#include <string_view>

namespace salaffect::cli {

/// Line-oriented status output. Colour is used only when the stream is a
/// terminal and NO_COLOR is unset.
class Logger {
 public:
  explicit Logger(std::ostream& out, bool is_terminal = false);

  void info(std::string_view message);
  void error(std::string_view message);

 private:
  std::ostream& out_;
  bool color_;
};

}  // namespace salaffect::cli
