#include "salaffect/saliency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "salaffect/fft.hpp"

namespace salaffect {

namespace {

constexpr double kEmptyBinRatio = 1e-12;
constexpr double kZeroRange = 1e-12;

std::vector<double> gaussian_kernel(double sigma) {
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * static_cast<double>(i * i) / (sigma * sigma));
    kernel[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (auto& v : kernel) v /= sum;
  return kernel;
}

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> luminance)
    : width_(width), height_(height), luminance_(std::move(luminance)) {
  validate_saliency_map(width_, height_, luminance_);
}

GrayImage GrayImage::from_gray8(const Gray8Image& image) {
  std::vector<double> lum(image.samples.size());
  for (std::size_t i = 0; i < lum.size(); ++i) lum[i] = image.samples[i] / 255.0;
  return GrayImage(image.width, image.height, std::move(lum));
}

Plane gaussian_blur(const Plane& input, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "gaussian sigma must be positive");
  }
  const auto kernel = gaussian_kernel(sigma);
  const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  const auto w = static_cast<std::ptrdiff_t>(input.width);
  const auto h = static_cast<std::ptrdiff_t>(input.height);

  Plane horizontal{input.width, input.height, std::vector<double>(input.values.size())};
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        const std::ptrdiff_t sx = std::clamp(x + k, std::ptrdiff_t{0}, w - 1);
        acc += kernel[static_cast<std::size_t>(k + radius)] * input.values[static_cast<std::size_t>(y * w + sx)];
      }
      horizontal.values[static_cast<std::size_t>(y * w + x)] = acc;
    }
  }

  Plane out{input.width, input.height, std::vector<double>(input.values.size())};
  for (std::ptrdiff_t y = 0; y < h; ++y) {
    for (std::ptrdiff_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        const std::ptrdiff_t sy = std::clamp(y + k, std::ptrdiff_t{0}, h - 1);
        acc += kernel[static_cast<std::size_t>(k + radius)] * horizontal.values[static_cast<std::size_t>(sy * w + x)];
      }
      out.values[static_cast<std::size_t>(y * w + x)] = acc;
    }
  }
  return out;
}

SaliencyMap spectral_residual_saliency(const GrayImage& image, double smoothing_sigma) {
  const std::size_t w = image.width();
  const std::size_t h = image.height();
  if (w < kMinSpectralResidualSide || h < kMinSpectralResidualSide) {
    std::ostringstream msg;
    msg << w << "x" << h << " is below the " << kMinSpectralResidualSide << "x" << kMinSpectralResidualSide
        << " minimum";
    throw Error(ErrorCode::ImageTooSmall, msg.str());
  }
  if (!(smoothing_sigma > 0.0) || !std::isfinite(smoothing_sigma)) {
    throw Error(ErrorCode::InvalidArgument, "smoothing sigma must be positive");
  }

  const std::size_t n = w * h;
  std::vector<fft::Complex> spectrum(n);
  const auto lum = image.luminance();
  for (std::size_t i = 0; i < n; ++i) spectrum[i] = lum[i];
  fft::transform_2d(spectrum, w, h, false);

  std::vector<double> amplitude(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    amplitude[i] = std::abs(spectrum[i]);
    peak = std::max(peak, amplitude[i]);
  }
  const double floor_amp = std::max(peak * kEmptyBinRatio, std::numeric_limits<double>::min());
  std::vector<double> log_amp(n);
  for (std::size_t i = 0; i < n; ++i) log_amp[i] = std::log(std::max(amplitude[i], floor_amp));

  // spectrum is periodic, so the box filter wraps
  std::vector<fft::Complex> recon(n);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      if (amplitude[i] <= floor_amp) continue;
      double box = 0.0;
      for (std::size_t dy = 0; dy < 3; ++dy) {
        const std::size_t yy = (y + h + dy - 1) % h;
        for (std::size_t dx = 0; dx < 3; ++dx) box += log_amp[yy * w + (x + w + dx - 1) % w];
      }
      const double residual = log_amp[i] - box / 9.0;
      recon[i] = std::polar(std::exp(residual), std::arg(spectrum[i]));
    }
  }
  fft::transform_2d(recon, w, h, true);

  Plane raw{w, h, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) raw.values[i] = std::norm(recon[i]);
  Plane smooth = gaussian_blur(raw, smoothing_sigma);

  const auto [lo_it, hi_it] = std::minmax_element(smooth.values.begin(), smooth.values.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::vector<double> out(n, 0.0);
  // raw magnitudes have no natural scale, so the guard is relative to the peak
  if (range > kZeroRange * std::abs(*hi_it)) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp((smooth.values[i] - lo) / range, 0.0, 1.0);
  }
  return SaliencyMap(w, h, std::move(out));
}

}  // namespace salaffect
