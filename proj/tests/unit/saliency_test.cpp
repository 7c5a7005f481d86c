#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "oracles/oracles.hpp"
#include "salaffect/fft.hpp"
#include "salaffect/saliency.hpp"
#include "support/test_support.hpp"

using namespace salaffect;

namespace {

std::vector<double> block_image(std::size_t side, std::size_t cx, std::size_t cy) {
  std::vector<double> img(side * side, 0.2);
  for (std::size_t y = cy - 1; y <= cy + 1; ++y) {
    for (std::size_t x = cx - 1; x <= cx + 1; ++x) img[y * side + x] = 1.0;
  }
  return img;
}

std::pair<std::size_t, std::size_t> argmax_xy(std::span<const double> v, std::size_t width) {
  const auto i = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  return {i % width, i / width};
}

}  // namespace

class FftSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(FftSizes, MatchesDirectDft) {
  const std::size_t n = GetParam();
  oracle::Rng rng(n);
  std::vector<fft::Complex> data(n);
  for (auto& c : data) c = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
  auto transformed = data;
  fft::transform(transformed, false);
  for (std::size_t k = 0; k < n; ++k) {
    fft::Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      acc += data[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n));
    }
    EXPECT_NEAR(std::abs(transformed[k] - acc), 0.0, 1e-9 * static_cast<double>(n));
  }
  fft::transform(transformed, true);
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(std::abs(transformed[j] - data[j]), 0.0, 1e-12);
}

INSTANTIATE_TEST_SUITE_P(PowerOfTwoAndArbitrary, FftSizes, ::testing::Values(1, 2, 8, 64, 3, 12, 17, 45, 100));

TEST(GaussianBlur, MatchesDirectTwoDimensionalConvolution) {
  oracle::Rng rng(3);
  Plane p{23, 17, {}};
  for (std::size_t i = 0; i < 23 * 17; ++i) p.values.push_back(rng.uniform());
  for (double sigma : {0.5, 1.3, 3.0}) {
    const auto fast = gaussian_blur(p, sigma);
    const auto slow = oracle::gaussian_blur_direct(p.values, 23, 17, sigma);
    for (std::size_t i = 0; i < slow.size(); ++i) EXPECT_NEAR(fast.values[i], slow[i], 1e-12);
  }
}

TEST(GaussianBlur, InteriorDeltaPreservesMass) {
  Plane p{41, 41, std::vector<double>(41 * 41, 0.0)};
  p.at(20, 20) = 1.0;
  const auto out = gaussian_blur(p, 3.0);
  double mass = 0.0;
  for (const double v : out.values) mass += v;
  EXPECT_NEAR(mass, 1.0, 1e-9);
  const auto direct = oracle::gaussian_blur_direct(p.values, 41, 41, 3.0);
  EXPECT_NEAR(out.at(20, 20), direct[20 * 41 + 20], 1e-15);
}

TEST(GaussianBlur, ConstantImageUnchanged) {
  Plane p{16, 9, std::vector<double>(16 * 9, 0.37)};
  for (const double v : gaussian_blur(p, 2.2).values) EXPECT_NEAR(v, 0.37, 1e-12);
}

TEST(GaussianBlur, LargerSigmaLowersPeak) {
  Plane p{31, 31, std::vector<double>(31 * 31, 0.0)};
  p.at(15, 15) = 1.0;
  const auto narrow = gaussian_blur(p, 0.5);
  const auto wide = gaussian_blur(p, 3.0);
  EXPECT_GT(*std::max_element(narrow.values.begin(), narrow.values.end()),
            *std::max_element(wide.values.begin(), wide.values.end()));
  EXPECT_ERROR_CODE(gaussian_blur(p, 0.0), ErrorCode::InvalidArgument);
}

TEST(SpectralResidual, ConstantImageGivesZeroMap) {
  const auto map = spectral_residual_saliency(GrayImage(64, 64, std::vector<double>(64 * 64, 0.5)));
  for (const double v : map.intensities()) EXPECT_LT(v, 1e-6);
}

TEST(SpectralResidual, BlockArgmaxNearCentreAndMatchesReference) {
  const auto img = block_image(32, 20, 9);
  const auto map = spectral_residual_saliency(GrayImage(32, 32, img), 3.0);
  const auto ref = oracle::spectral_residual_reference(img, 32, 32, 3.0);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(map.intensities()[i], ref[i], 1e-9);
  const auto [x, y] = argmax_xy(map.intensities(), 32);
  EXPECT_LE(std::max(std::abs(static_cast<long>(x) - 20), std::abs(static_cast<long>(y) - 9)), 2);
}

TEST(SpectralResidual, NonSquareNonPowerOfTwoMatchesReference) {
  oracle::Rng rng(11);
  std::vector<double> img(13 * 10);
  for (auto& v : img) v = rng.uniform();
  const auto map = spectral_residual_saliency(GrayImage(13, 10, img), 1.5);
  const auto ref = oracle::spectral_residual_reference(img, 13, 10, 1.5);
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(map.intensities()[i], ref[i], 1e-9);
}

TEST(SpectralResidual, ArgmaxFollowsTranslation) {
  const auto base = spectral_residual_saliency(GrayImage(64, 64, block_image(64, 20, 24)));
  const auto moved = spectral_residual_saliency(GrayImage(64, 64, block_image(64, 33, 41)));
  const auto [bx, by] = argmax_xy(base.intensities(), 64);
  const auto [mx, my] = argmax_xy(moved.intensities(), 64);
  EXPECT_LE(std::abs(static_cast<long>(mx - bx) - 13), 2);
  EXPECT_LE(std::abs(static_cast<long>(my - by) - 17), 2);
}

TEST(SpectralResidual, OutputValidAndDeterministic) {
  oracle::Rng rng(5);
  std::vector<double> img(40 * 24);
  for (auto& v : img) v = rng.uniform();
  const auto a = spectral_residual_saliency(GrayImage(40, 24, img));
  const auto b = spectral_residual_saliency(GrayImage(40, 24, img));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.width(), 40u);
  EXPECT_EQ(a.height(), 24u);
  EXPECT_NO_THROW(validate_saliency_map(a.width(), a.height(), a.intensities()));
}

TEST(SpectralResidual, Preconditions) {
  EXPECT_ERROR_CODE(spectral_residual_saliency(GrayImage(7, 8, std::vector<double>(56, 0.1))), ErrorCode::ImageTooSmall);
  EXPECT_ERROR_CODE(spectral_residual_saliency(GrayImage(8, 8, std::vector<double>(64, 0.1)), -1.0),
                    ErrorCode::InvalidArgument);
}
