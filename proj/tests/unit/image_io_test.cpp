#include <gtest/gtest.h>

#include <cstring>

#include "salaffect/image_io.hpp"
#include "support/test_support.hpp"

using namespace salaffect;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(ReadSaliencyFrame, EndpointSamplesMapToZeroAndOne) {
  const auto pgm = bytes_of(std::string("P5\n2 1\n255\n") + '\x00' + '\xff');
  const SaliencyMap map = read_saliency_frame(pgm);
  ASSERT_EQ(map.width(), 2u);
  ASSERT_EQ(map.height(), 1u);
  EXPECT_EQ(map.intensities()[0], 0.0);
  EXPECT_EQ(map.intensities()[1], 1.0);
}

TEST(ReadSaliencyFrame, LinearScaling) {
  const auto pgm = bytes_of(std::string("P5\n1 1\n255\n") + '\x80');
  EXPECT_NEAR(read_saliency_frame(pgm).intensities()[0], 0.50196, 1e-5);
  EXPECT_EQ(read_saliency_frame(pgm).intensities()[0], 128.0 / 255.0);
}

TEST(ReadSaliencyFrame, PgmCommentsAllowed) {
  const auto pgm = bytes_of(std::string("P5\n# made by hand\n1 1\n255\n") + '\x10');
  EXPECT_EQ(decode_gray8(pgm).samples[0], 0x10);
}

TEST(ReadSaliencyFrame, TruncatedPgmIsCorrupt) {
  const auto pgm = bytes_of(std::string("P5\n4 4\n255\n") + "abc");
  EXPECT_ERROR_CODE(read_saliency_frame(pgm), ErrorCode::CorruptImage);
}

TEST(ReadSaliencyFrame, TruncatedPngIsCorrupt) {
  Gray8Image img{8, 8, std::vector<std::uint8_t>(64, 7)};
  auto png = encode_png(img);
  png.resize(png.size() / 2);
  EXPECT_ERROR_CODE(read_saliency_frame(png), ErrorCode::CorruptImage);
}

TEST(ReadSaliencyFrame, UnknownFormatsRejected) {
  EXPECT_ERROR_CODE(read_saliency_frame(bytes_of("GIF89a....")), ErrorCode::UnsupportedFormat);
  EXPECT_ERROR_CODE(read_saliency_frame(bytes_of("P5\n1 1\n65535\nab")), ErrorCode::UnsupportedFormat);
  EXPECT_ERROR_CODE(read_saliency_frame(bytes_of("P2\n1 1\n255\n7\n")), ErrorCode::UnsupportedFormat);
}

TEST(ImageCodecs, RoundTripBothFormats) {
  Gray8Image img{5, 3, {}};
  for (std::size_t i = 0; i < 15; ++i) img.samples.push_back(static_cast<std::uint8_t>(i * 17));
  EXPECT_EQ(decode_gray8(encode_pgm(img)), img);
  EXPECT_EQ(decode_gray8(encode_png(img)), img);
}

TEST(ImageCodecs, QuantizeInvertsReadForEightBitValues) {
  Gray8Image img{256, 1, {}};
  for (int v = 0; v < 256; ++v) img.samples.push_back(static_cast<std::uint8_t>(v));
  EXPECT_EQ(quantize(read_saliency_frame(encode_pgm(img))), img);
}

TEST(FileHelpers, MissingFileIsIoError) {
  EXPECT_ERROR_CODE(read_file_bytes("/nonexistent/dir/frame.pgm"), ErrorCode::IoError);
  EXPECT_ERROR_CODE(write_file_text("/nonexistent/dir/out.txt", "x"), ErrorCode::IoError);
}
