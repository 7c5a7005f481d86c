#include "salaffect/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "salaffect/format.hpp"
#include "salaffect/image_io.hpp"
#include "salaffect/report.hpp"

namespace salaffect {

namespace fs = std::filesystem;

namespace {

// splitmix64 plus hand-rolled distributions: std:: distributions are
// implementation-defined and would make corpora differ across toolchains.
std::uint64_t next_u64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) { return static_cast<double>(next_u64(state) >> 11) * 0x1.0p-53; }

double uniform(std::uint64_t& state, double lo, double hi) { return lo + (hi - lo) * uniform01(state); }

// inclusive range
std::size_t uniform_index(std::uint64_t& state, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(uniform01(state) * static_cast<double>(hi - lo + 1));
}

double standard_normal(std::uint64_t& state) {
  const double u1 = 1.0 - uniform01(state);  // (0,1]
  const double u2 = uniform01(state);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Per-AU presence probability: baseline, and the shift applied in the
// multi-region and single-region regimes.
struct AuProfile {
  double base;
  double multi;
  double single;
};

constexpr std::array<AuProfile, kAuCount> kAuProfiles = {{
    {0.10, 0.00, 0.10},   // AU01
    {0.10, 0.00, 0.05},   // AU02
    {0.10, 0.00, 0.25},   // AU04
    {0.08, 0.00, 0.05},   // AU05
    {0.10, 0.25, 0.00},   // AU06
    {0.12, 0.00, 0.05},   // AU07
    {0.05, 0.00, 0.10},   // AU09
    {0.08, 0.05, 0.00},   // AU10
    {0.15, 0.35, 0.00},   // AU12
    {0.10, 0.10, 0.00},   // AU14
    {0.08, 0.00, 0.20},   // AU15
    {0.10, 0.00, 0.10},   // AU17
    {0.05, 0.00, 0.15},   // AU20
    {0.06, 0.00, 0.15},   // AU23
    {0.20, 0.20, 0.00},   // AU25
    {0.10, 0.00, 0.20},   // AU26
    {0.03, 0.00, 0.02},   // AU28
    {0.30, 0.00, 0.00},   // AU45
}};

std::string trial_name(std::size_t index, std::size_t total) {
  const int digits = std::max(4, static_cast<int>(std::to_string(total).size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%0*zu", digits, index + 1);
  return buf;
}

std::string frame_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06zu.pgm", index);
  return buf;
}

}  // namespace

void SynthConfig::validate() const {
  if (trial_count < 10) throw Error(ErrorCode::InvalidArgument, "synthetic corpus needs at least 10 trials");
  if (frames_per_trial < 2) throw Error(ErrorCode::InvalidArgument, "synthetic corpus needs at least 2 frames per trial");
  if (width < 16 || height < 16) throw Error(ErrorCode::InvalidArgument, "synthetic frames must be at least 16x16");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw Error(ErrorCode::InvalidArgument, "noise_sd must be >= 0");
  if (!(multi_region_probability >= 0.0 && multi_region_probability <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "multi_region_probability must lie in [0,1]");
  }
  for (const double s : {region_valence_slope, region_arousal_slope, area_valence_slope, area_arousal_slope}) {
    if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "effect slopes must be finite");
  }
}

SaliencyMap render_synth_frame(std::size_t width, std::size_t height, std::size_t regions, std::uint64_t& rng_state,
                               double* area_out) {
  if (regions < 1 || regions > 4) throw Error(ErrorCode::InvalidArgument, "synthetic frames hold 1..4 regions");
  std::vector<double> values(width * height);
  for (auto& v : values) v = uniform(rng_state, 0.0, 0.25);

  // one rectangle per quadrant cell, inset by a pixel so neighbours never touch
  std::array<std::size_t, 4> cells = {0, 1, 2, 3};
  for (std::size_t i = 0; i < regions; ++i) std::swap(cells[i], cells[uniform_index(rng_state, i, 3)]);

  const std::size_t cell_w = width / 2;
  const std::size_t cell_h = height / 2;
  auto side = [&](std::size_t extent, std::size_t cell) {
    const std::size_t lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(0.09 * extent)));
    const std::size_t hi = std::min(std::max<std::size_t>(lo, static_cast<std::size_t>(std::lround(0.19 * extent))), cell - 2);
    return uniform_index(rng_state, std::min(lo, hi), hi);
  };

  std::size_t covered = 0;
  for (std::size_t r = 0; r < regions; ++r) {
    const std::size_t cx = (cells[r] % 2) * cell_w;
    const std::size_t cy = (cells[r] / 2) * cell_h;
    const std::size_t sw = side(width, cell_w);
    const std::size_t sh = side(height, cell_h);
    const std::size_t x0 = uniform_index(rng_state, cx + 1, cx + cell_w - 1 - sw);
    const std::size_t y0 = uniform_index(rng_state, cy + 1, cy + cell_h - 1 - sh);
    for (std::size_t y = y0; y < y0 + sh; ++y) {
      for (std::size_t x = x0; x < x0 + sw; ++x) values[y * width + x] = uniform(rng_state, 0.6, 1.0);
    }
    covered += sw * sh;
  }
  if (area_out) *area_out = static_cast<double>(covered) / static_cast<double>(width * height);
  return SaliencyMap(width, height, std::move(values));
}

SynthCorpus synth_corpus(const SynthConfig& config, const fs::path& out_dir) {
  config.validate();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + out_dir.string() + "': " + ec.message());
  // stale frames from an earlier, larger corpus would otherwise be picked up
  fs::remove_all(out_dir / "trials", ec);

  SynthCorpus corpus;
  std::vector<TrialManifestEntry> manifest;
  std::vector<EmotionLabel> labels;
  const auto au_rows_per_frame = static_cast<std::size_t>(kSynthAuFps / kSynthSaliencyFps);

  for (std::size_t t = 0; t < config.trial_count; ++t) {
    std::uint64_t rng = config.seed * 0x9E3779B97F4A7C15ULL + t;
    next_u64(rng);

    SynthTrialTruth truth;
    truth.trial_id = trial_name(t, config.trial_count);
    truth.multi_region = uniform01(rng) < config.multi_region_probability;

    const fs::path trial_dir = out_dir / "trials" / truth.trial_id;
    const fs::path saliency_dir = trial_dir / "saliency";
    fs::create_directories(saliency_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create '" + saliency_dir.string() + "': " + ec.message());

    for (std::size_t f = 0; f < config.frames_per_trial; ++f) {
      const std::size_t regions = truth.multi_region ? 2 + uniform_index(rng, 0, 1) : 1;
      double area = 0.0;
      const SaliencyMap map = render_synth_frame(config.width, config.height, regions, rng, &area);
      write_file_bytes(saliency_dir / frame_name(f), encode_pgm(quantize(map)));
      truth.region_counts.push_back(regions);
      truth.areas.push_back(area);
    }
    for (std::size_t f = 0; f < config.frames_per_trial; ++f) {
      truth.mean_region_count += static_cast<double>(truth.region_counts[f]);
      truth.mean_area += truth.areas[f];
    }
    truth.mean_region_count /= static_cast<double>(config.frames_per_trial);
    truth.mean_area /= static_cast<double>(config.frames_per_trial);

    std::vector<AuFrame> au(config.frames_per_trial * au_rows_per_frame);
    for (std::size_t row = 0; row < au.size(); ++row) {
      au[row].frame_index = row + 1;
      au[row].timestamp = static_cast<double>(row) / kSynthAuFps;
      for (std::size_t a = 0; a < kAuCount; ++a) {
        const auto& prof = kAuProfiles[a];
        const double p = prof.base + (truth.multi_region ? prof.multi : prof.single);
        au[row].presence[a] = uniform01(rng) < p ? 1 : 0;
      }
    }
    write_file_text(trial_dir / "au.csv", emit_au_csv(au));

    const double z_regions = truth.mean_region_count - kSynthRegionCentre;
    const double z_area = (truth.mean_area - kSynthAreaCentre) / kSynthAreaScale;
    auto score = [&](double region_slope, double area_slope) {
      const double noise = config.noise_sd > 0.0 ? config.noise_sd * standard_normal(rng) : 0.0;
      return std::clamp(5.0 + region_slope * z_regions + area_slope * z_area + noise, 1.0, 9.0);
    };
    truth.valence = score(config.region_valence_slope, config.area_valence_slope);
    truth.arousal = score(config.region_arousal_slope, config.area_arousal_slope);
    labels.emplace_back(truth.trial_id, truth.valence, truth.arousal);

    manifest.push_back(TrialManifestEntry{truth.trial_id, fs::path("trials") / truth.trial_id / "saliency",
                                          kSynthSaliencyFps, fs::path("trials") / truth.trial_id / "au.csv",
                                          kSynthAuFps});
    corpus.truth.push_back(std::move(truth));
  }

  corpus.manifest_path = out_dir / "manifest.json";
  corpus.labels_path = out_dir / "labels.csv";
  write_file_text(corpus.manifest_path, write_manifest(manifest));
  write_file_text(corpus.labels_path, emit_labels_csv(labels));
  return corpus;
}

}  // namespace salaffect
