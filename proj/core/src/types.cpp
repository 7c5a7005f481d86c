#include "salaffect/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace salaffect {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OutOfRangeIntensity: return "OutOfRangeIntensity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptImage: return "CorruptImage";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::NonBinaryPresence: return "NonBinaryPresence";
    case ErrorCode::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorCode::BadManifest: return "BadManifest";
    case ErrorCode::TargetRateExceedsNative: return "TargetRateExceedsNative";
    case ErrorCode::EmptyTrial: return "EmptyTrial";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::AllColumnsConstant: return "AllColumnsConstant";
    case ErrorCode::TooFewTrials: return "TooFewTrials";
  }
  return "Unknown";
}

void validate_saliency_map(std::size_t width, std::size_t height, std::span<const double> intensities) {
  if (width == 0 || height == 0) {
    throw Error(ErrorCode::DimensionMismatch, "saliency map must be at least 1x1");
  }
  if (intensities.size() != width * height) {
    std::ostringstream msg;
    msg << "expected " << width * height << " intensities for " << width << "x" << height << ", got "
        << intensities.size();
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  for (std::size_t i = 0; i < intensities.size(); ++i) {
    const double v = intensities[i];
    // written so that NaN also fails
    if (!(v >= 0.0 && v <= 1.0)) {
      std::ostringstream msg;
      msg << "intensity " << v << " at pixel " << i << " outside [0,1]";
      throw Error(ErrorCode::OutOfRangeIntensity, msg.str());
    }
  }
}

SaliencyMap::SaliencyMap(std::size_t width, std::size_t height, std::vector<double> intensities)
    : width_(width), height_(height), intensities_(std::move(intensities)) {
  validate_saliency_map(width_, height_, intensities_);
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != width_ * height_) {
    throw Error(ErrorCode::DimensionMismatch, "mask bit count does not match width*height");
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height)
    : width_(width), height_(height), bits_(width * height, 0) {}

namespace {

constexpr std::array<AuDescriptor, kAuCount> kCatalog = {{
    {"AU01", "Inner Brow Raiser"},
    {"AU02", "Outer Brow Raiser"},
    {"AU04", "Brow Lowerer"},
    {"AU05", "Upper Lid Raiser"},
    {"AU06", "Cheek Raiser"},
    {"AU07", "Lid Tightener"},
    {"AU09", "Nose Wrinkler"},
    {"AU10", "Upper Lip Raiser"},
    {"AU12", "Lip Corner Puller"},
    {"AU14", "Dimpler"},
    {"AU15", "Lip Corner Depressor"},
    {"AU17", "Chin Raiser"},
    {"AU20", "Lip Stretcher"},
    {"AU23", "Lip Tightener"},
    {"AU25", "Lips Part"},
    {"AU26", "Jaw Drop"},
    {"AU28", "Lip Suck"},
    {"AU45", "Blink"},
}};

}  // namespace

const std::array<AuDescriptor, kAuCount>& AuCatalog::entries() noexcept { return kCatalog; }

std::size_t AuCatalog::index_of(std::string_view code) noexcept {
  const auto it = std::find_if(kCatalog.begin(), kCatalog.end(), [&](const AuDescriptor& d) { return d.code == code; });
  return static_cast<std::size_t>(it - kCatalog.begin());
}

std::string AuCatalog::presence_column(std::size_t index) {
  return std::string(kCatalog.at(index).code) + "_c";
}

EmotionLabel::EmotionLabel(std::string trial_id, double valence, double arousal)
    : trial_id_(std::move(trial_id)), valence_(valence), arousal_(arousal) {
  auto in_range = [](double s) { return s >= 1.0 && s <= 9.0; };
  if (!in_range(valence_) || !in_range(arousal_)) {
    std::ostringstream msg;
    msg << "trial '" << trial_id_ << "': valence " << valence_ << ", arousal " << arousal_ << " must lie in [1,9]";
    throw Error(ErrorCode::ScoreOutOfRange, msg.str());
  }
}

std::string_view to_string(Quadrant q) noexcept {
  switch (q) {
    case Quadrant::HighValenceLowArousal: return "HighValenceLowArousal";
    case Quadrant::HighValenceHighArousal: return "HighValenceHighArousal";
    case Quadrant::LowValenceLowArousal: return "LowValenceLowArousal";
    case Quadrant::LowValenceHighArousal: return "LowValenceHighArousal";
    case Quadrant::Boundary: return "Boundary";
  }
  return "Boundary";
}

Quadrant classify_quadrant(const EmotionLabel& label) noexcept {
  const double v = label.valence();
  const double a = label.arousal();
  if (v == kCircumplexMidpoint || a == kCircumplexMidpoint) return Quadrant::Boundary;
  const bool high_v = v > kCircumplexMidpoint;
  const bool high_a = a > kCircumplexMidpoint;
  if (high_v) return high_a ? Quadrant::HighValenceHighArousal : Quadrant::HighValenceLowArousal;
  return high_a ? Quadrant::LowValenceHighArousal : Quadrant::LowValenceLowArousal;
}

}  // namespace salaffect
