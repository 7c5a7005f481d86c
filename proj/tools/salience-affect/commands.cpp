#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <sstream>
#include <vector>

#include "salaffect/format.hpp"
#include "salaffect/image_io.hpp"
#include "salaffect/ingest.hpp"

namespace salaffect::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IoError: return kExitIo;
    case ErrorCode::EmptyTrial: return kExitEmptyTrial;
    case ErrorCode::TooFewTrials: return kExitTooFewTrials;
    case ErrorCode::InvalidArgument:
    case ErrorCode::TargetRateExceedsNative: return kExitUsage;
    default: return kExitFormat;
  }
}

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(ErrorCode::IoError, "cannot create output directory '" + dir.string() + "'");
}

int fail(Logger& log, const Error& e) {
  log.error(e.what());
  return exit_code_for(e.code());
}

}  // namespace

int cmd_saliency(const SaliencyOptions& options, Logger& log) {
  std::vector<fs::path> written;
  try {
    const auto frames = list_saliency_frames(options.in_dir);
    if (frames.empty()) {
      throw Error(ErrorCode::IoError, "no frame_NNNNNN.pgm/.png images in '" + options.in_dir.string() + "'");
    }
    ensure_dir(options.out_dir);
    for (const auto& path : frames) {
      const auto bytes = read_file_bytes(path);
      Gray8Image input;
      try {
        input = decode_gray8(bytes);
      } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
      }
      const SaliencyMap map = spectral_residual_saliency(GrayImage::from_gray8(input), options.sigma);
      const auto format = to_lower(path.extension().string()) == ".png" ? ImageFormat::Png : ImageFormat::Pgm;
      const fs::path target = options.out_dir / path.filename();
      write_file_bytes(target, encode_gray8(quantize(map), format));
      written.push_back(target);
    }
    log.info("wrote " + std::to_string(written.size()) + " saliency maps to " + options.out_dir.string());
    return kExitOk;
  } catch (const Error& e) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    return fail(log, e);
  }
}

int cmd_extract(const ExtractOptions& options, Logger& log) {
  try {
    options.features.validate();
    auto manifest = read_manifest_file(options.manifest);
    std::sort(manifest.begin(), manifest.end(), [](const auto& a, const auto& b) { return a.trial_id < b.trial_id; });

    std::vector<TrialFeatures> trials;
    for (const auto& entry : manifest) {
      std::error_code ec;
      if (!fs::is_directory(entry.saliency_dir, ec)) {
        throw Error(ErrorCode::EmptyTrial,
                    "trial '" + entry.trial_id + "': saliency directory '" + entry.saliency_dir.string() + "' missing");
      }
      const SaliencyStream stream = load_saliency_stream(entry, options.target_fps);
      std::vector<FrameFeatures> frames;
      for (std::size_t i = 0; i < stream.maps.size(); ++i) {
        frames.push_back(
            extract_frame_features(stream.maps[i], options.features, stream.frame_indices[i], stream.timestamps[i]));
      }
      trials.push_back(aggregate_trial(entry.trial_id, std::move(frames)));
    }

    ensure_dir(options.out_dir);
    write_file_text(options.out_dir / "frame_features.csv", emit_frame_features_csv(trials));
    write_file_text(options.out_dir / "trial_features.csv", emit_trial_features_csv(trials));
    log.info("extracted features for " + std::to_string(trials.size()) + " trials");
    return kExitOk;
  } catch (const Error& e) {
    return fail(log, e);
  }
}

int cmd_report(const ReportOptions& options, Logger& log) {
  try {
    options.analysis.features.validate();
    const auto manifest = read_manifest_file(options.manifest);
    auto labels = read_labels_csv(read_file_text(options.labels));
    const Corpus corpus = load_corpus(manifest, std::move(labels), options.analysis);
    const AnalysisReport report = run_analysis(corpus, options.analysis);

    ensure_dir(options.out_dir);
    write_file_text(options.out_dir / "report.json", emit_json(report));
    for (const auto& file : emit_plot_data(report)) write_file_text(options.out_dir / file.name, file.content);
    for (const auto& ex : report.provenance.excluded) {
      log.info("excluded " + ex.trial_id + " from " + ex.analysis + ": " + ex.reason);
    }
    log.info("report written to " + (options.out_dir / "report.json").string());
    return kExitOk;
  } catch (const Error& e) {
    return fail(log, e);
  }
}

int cmd_synth(const SynthOptions& options, Logger& log) {
  try {
    options.config.validate();
  } catch (const Error& e) {
    log.error(e.what());
    return kExitUsage;
  }
  try {
    const SynthCorpus corpus = synth_corpus(options.config, options.out_dir);
    log.info("wrote " + std::to_string(corpus.truth.size()) + " synthetic trials; manifest " +
             corpus.manifest_path.string());
    return kExitOk;
  } catch (const Error& e) {
    return fail(log, e);
  } catch (const fs::filesystem_error& e) {
    log.error(e.what());
    return kExitIo;
  }
}

namespace {

bool parse_frame_size(const std::string& text, std::size_t& width, std::size_t& height) {
  const auto parts = split(text, 'x');
  return parts.size() == 2 && parse_size(parts[0], width) && parse_size(parts[1], height);
}

void add_feature_flags(CLI::App& cmd, FeatureConfig& features, int& connectivity, double& fps) {
  cmd.add_option("--threshold", features.threshold, "Binarisation threshold on saliency intensity")
      ->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--connectivity", connectivity, "Pixel adjacency for region labelling")
      ->check(CLI::IsMember({4, 8}));
  cmd.add_option("--min-region-frac", features.min_region_fraction,
                 "Regions smaller than this fraction of the frame are ignored");
  cmd.add_option("--fps", fps, "Target sampling rate in frames per second")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool err_is_terminal) {
  Logger log(err, err_is_terminal);
  CLI::App app{"Saliency features, facial action units and felt-emotion analysis", "salience-affect"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  SaliencyOptions sal;
  auto* sal_cmd = app.add_subcommand("saliency", "Spectral-residual saliency maps for a directory of frames");
  sal_cmd->add_option("--in", sal.in_dir, "Directory of frame_NNNNNN.pgm|png images")->required();
  sal_cmd->add_option("--out", sal.out_dir, "Output directory for saliency maps")->required();
  sal_cmd->add_option("--sigma", sal.sigma, "Gaussian smoothing sigma in pixels")->check(CLI::PositiveNumber);

  ExtractOptions ext;
  int ext_connectivity = 8;
  auto* ext_cmd = app.add_subcommand("extract", "Per-frame and per-trial saliency features");
  ext_cmd->add_option("--manifest", ext.manifest, "Trial manifest JSON")->required();
  ext_cmd->add_option("--out", ext.out_dir, "Output directory")->required();
  add_feature_flags(*ext_cmd, ext.features, ext_connectivity, ext.target_fps);

  ReportOptions rep;
  int rep_connectivity = 8;
  auto* rep_cmd = app.add_subcommand("report", "Correlation, CCA and circumplex report over a corpus");
  rep_cmd->add_option("--manifest", rep.manifest, "Trial manifest JSON")->required();
  rep_cmd->add_option("--labels", rep.labels, "Labels CSV (trial_id,valence,arousal)")->required();
  rep_cmd->add_option("--out", rep.out_dir, "Output directory")->required();
  rep_cmd->add_option("--ridge", rep.analysis.ridge, "Ridge added to both CCA covariance blocks")
      ->check(CLI::NonNegativeNumber);
  add_feature_flags(*rep_cmd, rep.analysis.features, rep_connectivity, rep.analysis.target_fps);

  SynthOptions syn;
  std::string size = "64x64";
  auto* syn_cmd = app.add_subcommand("synth", "Write a synthetic corpus with planted effects");
  syn_cmd->add_option("--seed", syn.config.seed, "RNG seed")->required();
  syn_cmd->add_option("--trials", syn.config.trial_count, "Number of trials (>= 10)")->required();
  syn_cmd->add_option("--frames", syn.config.frames_per_trial, "Saliency frames per trial (>= 2)")->required();
  syn_cmd->add_option("--size", size, "Frame size WxH")->required();
  syn_cmd->add_option("--out", syn.out_dir, "Output directory")->required();
  syn_cmd->add_option("--region-valence", syn.config.region_valence_slope, "Planted region_count -> valence slope");
  syn_cmd->add_option("--region-arousal", syn.config.region_arousal_slope, "Planted region_count -> arousal slope");
  syn_cmd->add_option("--area-valence", syn.config.area_valence_slope, "Planted saliency_area -> valence slope");
  syn_cmd->add_option("--area-arousal", syn.config.area_arousal_slope, "Planted saliency_area -> arousal slope");
  syn_cmd->add_option("--noise", syn.config.noise_sd, "Label noise standard deviation");
  syn_cmd->add_option("--multi-prob", syn.config.multi_region_probability,
                      "Probability that a trial is multi-region");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sal_cmd) return cmd_saliency(sal, log);
    if (*ext_cmd) {
      ext.features.connectivity = connectivity_from_int(ext_connectivity);
      return cmd_extract(ext, log);
    }
    if (*rep_cmd) {
      rep.analysis.features.connectivity = connectivity_from_int(rep_connectivity);
      return cmd_report(rep, log);
    }
    if (*syn_cmd) {
      if (!parse_frame_size(size, syn.config.width, syn.config.height)) {
        log.error("--size must look like 64x64, got '" + size + "'");
        return kExitUsage;
      }
      return cmd_synth(syn, log);
    }
  } catch (const Error& e) {
    return fail(log, e);
  }
  return kExitUsage;
}

}  // namespace salaffect::cli
