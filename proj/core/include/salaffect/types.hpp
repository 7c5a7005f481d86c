#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "salaffect/error.hpp"

namespace salaffect {

/// Throws Error(DimensionMismatch) when the grid is empty or the value count
/// does not match width*height, Error(OutOfRangeIntensity) when any value
/// falls outside [0,1] (NaN included).
void validate_saliency_map(std::size_t width, std::size_t height, std::span<const double> intensities);

/// Per-pixel saliency in [0,1], row-major. Immutable once built.
class SaliencyMap {
 public:
  SaliencyMap(std::size_t width, std::size_t height, std::vector<double> intensities);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return intensities_.size(); }
  std::span<const double> intensities() const noexcept { return intensities_; }
  double at(std::size_t x, std::size_t y) const noexcept { return intensities_[y * width_ + x]; }

  friend bool operator==(const SaliencyMap&, const SaliencyMap&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> intensities_;
};

class BinaryMask {
 public:
  BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);
  BinaryMask(std::size_t width, std::size_t height);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool at(std::size_t x, std::size_t y) const noexcept { return bits_[y * width_ + x] != 0; }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t x, std::size_t y, bool value) noexcept { bits_[y * width_ + x] = value ? 1 : 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bits_;
};

struct FrameFeatures {
  std::size_t frame_index = 0;
  double timestamp = 0.0;       // seconds
  double saliency_area = 0.0;   // fraction of frame
  std::size_t region_count = 0;

  friend bool operator==(const FrameFeatures&, const FrameFeatures&) = default;
};

struct TrialFeatures {
  std::string trial_id;
  std::vector<FrameFeatures> frames;
  double mean_saliency_area = 0.0;
  double mean_region_count = 0.0;
};

inline constexpr std::size_t kAuCount = 18;

struct AuDescriptor {
  std::string_view code;  // e.g. "AU12"
  std::string_view name;  // e.g. "Lip Corner Puller"
};

/// The 18 presence AUs in ascending code order. Column order of every AU
/// matrix in the toolkit follows this catalog.
class AuCatalog {
 public:
  static const std::array<AuDescriptor, kAuCount>& entries() noexcept;
  /// Index of `code` (e.g. "AU12") in the catalog, or kAuCount if unknown.
  static std::size_t index_of(std::string_view code) noexcept;
  /// Presence column header, e.g. "AU12_c".
  static std::string presence_column(std::size_t index);
};

struct AuFrame {
  std::size_t frame_index = 0;
  double timestamp = 0.0;
  std::array<std::uint8_t, kAuCount> presence{};

  friend bool operator==(const AuFrame&, const AuFrame&) = default;
};

/// Self-reported felt emotion for one trial; scores are reals in [1,9].
class EmotionLabel {
 public:
  /// Throws Error(ScoreOutOfRange).
  EmotionLabel(std::string trial_id, double valence, double arousal);

  const std::string& trial_id() const noexcept { return trial_id_; }
  double valence() const noexcept { return valence_; }
  double arousal() const noexcept { return arousal_; }

  friend bool operator==(const EmotionLabel&, const EmotionLabel&) = default;

 private:
  std::string trial_id_;
  double valence_;
  double arousal_;
};

enum class Quadrant {
  HighValenceLowArousal,
  HighValenceHighArousal,
  LowValenceLowArousal,
  LowValenceHighArousal,
  Boundary,
};

inline constexpr std::array<Quadrant, 5> kAllQuadrants = {
    Quadrant::HighValenceLowArousal, Quadrant::HighValenceHighArousal, Quadrant::LowValenceLowArousal,
    Quadrant::LowValenceHighArousal, Quadrant::Boundary};

inline constexpr double kCircumplexMidpoint = 5.0;

std::string_view to_string(Quadrant q) noexcept;

/// Strict comparison against the midpoint 5; a score of exactly 5 on either
/// axis lands in Boundary.
Quadrant classify_quadrant(const EmotionLabel& label) noexcept;

}  // namespace salaffect
