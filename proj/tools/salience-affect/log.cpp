#include "log.hpp"

#include <cstdlib>

namespace salaffect::cli {

Logger::Logger(std::ostream& out, bool is_terminal)
    : out_(out), color_(is_terminal && std::getenv("NO_COLOR") == nullptr) {}

void Logger::info(std::string_view message) {
  if (color_) {
    out_ << "\033[32minfo\033[0m: " << message << '\n';
  } else {
    out_ << "info: " << message << '\n';
  }
}

void Logger::error(std::string_view message) {
  if (color_) {
    out_ << "\033[31merror\033[0m: " << message << '\n';
  } else {
    out_ << "error: " << message << '\n';
  }
}

}  // namespace salaffect::cli
