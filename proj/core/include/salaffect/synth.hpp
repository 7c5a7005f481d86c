#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "salaffect/ingest.hpp"
#include "salaffect/types.hpp"

namespace salaffect {

/// Parameters of a synthetic corpus with planted feature -> label effects.
///
/// Labels are generated as
///   score = 5 + slope_region * (mean_regions - 2)
///             + slope_area * (mean_area - 0.075) / 0.055 + N(0, noise_sd)
/// clamped to [1,9]; the centring constants put both features on roughly
/// [-1,1] over their typical range.
struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t trial_count = 100;
  std::size_t frames_per_trial = 60;
  std::size_t width = 64;
  std::size_t height = 64;
  double region_valence_slope = 1.5;
  double region_arousal_slope = -1.5;
  double area_valence_slope = 0.5;
  double area_arousal_slope = -0.5;
  double noise_sd = 0.5;
  double multi_region_probability = 0.5;

  /// Throws InvalidArgument: trial_count >= 10, frames_per_trial >= 2,
  /// frames at least 16x16, noise_sd >= 0, probability in [0,1].
  void validate() const;
};

inline constexpr double kSynthSaliencyFps = 2.0;
inline constexpr double kSynthAuFps = 4.0;
inline constexpr double kSynthRegionCentre = 2.0;
inline constexpr double kSynthAreaCentre = 0.075;
inline constexpr double kSynthAreaScale = 0.055;

/// Ground truth of one generated trial, as planted.
struct SynthTrialTruth {
  std::string trial_id;
  bool multi_region = false;
  std::vector<std::size_t> region_counts;  // per frame
  std::vector<double> areas;               // per frame, fraction of the frame
  double mean_region_count = 0.0;
  double mean_area = 0.0;
  double valence = 0.0;
  double arousal = 0.0;
};

struct SynthCorpus {
  std::filesystem::path manifest_path;
  std::filesystem::path labels_path;
  std::vector<SynthTrialTruth> truth;
};

/// Writes manifest.json, labels.csv and trials/<id>/{saliency/frame_NNNNNN.pgm,
/// au.csv} under `out_dir`. Output bytes depend only on the config.
SynthCorpus synth_corpus(const SynthConfig& config, const std::filesystem::path& out_dir);

/// Renders one frame holding `regions` well-separated rectangles (1..4).
/// Exposed for tests; `rng_state` is advanced.
SaliencyMap render_synth_frame(std::size_t width, std::size_t height, std::size_t regions, std::uint64_t& rng_state,
                               double* area_out = nullptr);

}  // namespace salaffect
