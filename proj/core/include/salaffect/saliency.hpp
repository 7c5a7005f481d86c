#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "salaffect/image_io.hpp"
#include "salaffect/types.hpp"

namespace salaffect {

/// Row-major grid of reals with no range constraint.
struct Plane {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  double& at(std::size_t x, std::size_t y) { return values[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return values[y * width + x]; }
};

/// Luminance image in [0,1].
class GrayImage {
 public:
  /// Throws DimensionMismatch / OutOfRangeIntensity on invalid input.
  GrayImage(std::size_t width, std::size_t height, std::vector<double> luminance);
  static GrayImage from_gray8(const Gray8Image& image);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::span<const double> luminance() const noexcept { return luminance_; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> luminance_;
};

inline constexpr std::size_t kMinSpectralResidualSide = 8;
inline constexpr double kDefaultSmoothingSigma = 3.0;

/// Separable Gaussian, kernel radius ceil(3*sigma), unit-mass kernel,
/// replicate-clamped borders. Throws InvalidArgument for sigma <= 0.
Plane gaussian_blur(const Plane& input, double sigma);

/// Spectral-residual saliency:
///   log-amplitude spectrum minus its 3x3 (circular) box average, recombined
///   with the original phase, inverse transformed, squared magnitude,
///   Gaussian smoothed, then min-max normalised to [0,1].
/// Spectral bins with amplitude <= 1e-12 of the peak carry no phase and are
/// left out of the reconstruction. A smoothed map whose range is within 1e-12
/// of its peak normalises to all zeros.
/// Throws ImageTooSmall below 8x8 and InvalidArgument for sigma <= 0.
SaliencyMap spectral_residual_saliency(const GrayImage& image, double smoothing_sigma = kDefaultSmoothingSigma);

}  // namespace salaffect
