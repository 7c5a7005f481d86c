#pragma once

#include <filesystem>
#include <ostream>

#include "log.hpp"
#include "salaffect/error.hpp"
#include "salaffect/features.hpp"
#include "salaffect/report.hpp"
#include "salaffect/saliency.hpp"
#include "salaffect/synth.hpp"

namespace salaffect::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitFormat = 3,
  kExitEmptyTrial = 4,
  kExitTooFewTrials = 5,
};

int exit_code_for(ErrorCode code) noexcept;

struct SaliencyOptions {
  std::filesystem::path in_dir;
  std::filesystem::path out_dir;
  double sigma = kDefaultSmoothingSigma;
};

struct ExtractOptions {
  std::filesystem::path manifest;
  std::filesystem::path out_dir;
  FeatureConfig features;
  double target_fps = kDefaultTargetFps;
};

struct ReportOptions {
  std::filesystem::path manifest;
  std::filesystem::path labels;
  std::filesystem::path out_dir;
  AnalysisConfig analysis;
};

struct SynthOptions {
  SynthConfig config;
  std::filesystem::path out_dir;
};

int cmd_saliency(const SaliencyOptions& options, Logger& log);
int cmd_extract(const ExtractOptions& options, Logger& log);
int cmd_report(const ReportOptions& options, Logger& log);
int cmd_synth(const SynthOptions& options, Logger& log);

/// Parses `salience-affect <subcommand> ...` and dispatches. `--help` text
/// goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool err_is_terminal = false);

}  // namespace salaffect::cli
