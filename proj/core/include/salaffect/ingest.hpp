#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "salaffect/types.hpp"

namespace salaffect {

/// One manifest row: where a trial's elicitation-video saliency frames and
/// facial AU stream live, and the native rate of each.
struct TrialManifestEntry {
  std::string trial_id;
  std::filesystem::path saliency_dir;
  double saliency_fps = 0.0;
  std::filesystem::path au_csv;
  double au_fps = 0.0;

  friend bool operator==(const TrialManifestEntry&, const TrialManifestEntry&) = default;
};

/// Parses the manifest JSON: {"trials": [{trial_id, saliency_dir,
/// saliency_fps, au_csv, au_fps}, ...]} (a bare top-level array is also
/// accepted). Relative paths resolve against `base_dir`.
std::vector<TrialManifestEntry> read_manifest(std::string_view json_text, const std::filesystem::path& base_dir);
std::vector<TrialManifestEntry> read_manifest_file(const std::filesystem::path& manifest_path);
std::string write_manifest(const std::vector<TrialManifestEntry>& entries);

/// AU CSV in the common facial-behaviour tool layout. Header names are matched
/// case-insensitively after trimming; extra columns are ignored. MalformedRow
/// and NonBinaryPresence messages carry the 1-based line number of the file.
std::vector<AuFrame> read_au_csv(std::string_view text);

/// `trial_id,valence,arousal`; scores may be reals.
std::vector<EmotionLabel> read_labels_csv(std::string_view text);

/// Floor-index sampling: k*native/target for k = 0,1,... while below
/// frame_count. Throws TargetRateExceedsNative when target > native.
std::vector<std::size_t> sample_frames(double native_fps, double target_fps, std::size_t frame_count);

/// Files named frame_NNNNNN.pgm / .png in `dir`, ordered by their number.
/// Throws Error(IoError) if the directory does not exist.
std::vector<std::filesystem::path> list_saliency_frames(const std::filesystem::path& dir);

struct SaliencyStream {
  std::vector<std::size_t> frame_indices;  // native ordinals of the sampled frames
  std::vector<double> timestamps;          // frame_index / native fps
  std::vector<SaliencyMap> maps;
  std::uint64_t content_digest = 0;        // over the raw bytes of the sampled files
};

struct AuStream {
  std::vector<AuFrame> frames;             // sampled rows
  std::uint64_t content_digest = 0;        // over the CSV bytes
};

SaliencyStream load_saliency_stream(const TrialManifestEntry& entry, double target_fps);
AuStream load_au_stream(const TrialManifestEntry& entry, double target_fps);

struct TrialStreams {
  SaliencyStream saliency;
  AuStream au;
};

/// Loads and samples both streams; throws EmptyTrial when either ends up empty.
TrialStreams load_trial(const TrialManifestEntry& entry, double target_fps);

}  // namespace salaffect
