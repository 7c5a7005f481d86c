#include "salaffect/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace salaffect {

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

bool is_png(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0;
}

bool is_pgm(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5';
}

// Reads one unsigned header field of a netpbm file, skipping whitespace and
// '#' comments. Returns nullopt at end of input.
std::optional<std::size_t> next_header_number(std::span<const std::uint8_t> bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(bytes[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= bytes.size() || !std::isdigit(bytes[pos])) return std::nullopt;
  std::size_t value = 0;
  while (pos < bytes.size() && std::isdigit(bytes[pos])) {
    value = value * 10 + static_cast<std::size_t>(bytes[pos] - '0');
    if (value > (std::size_t{1} << 31)) return std::nullopt;
    ++pos;
  }
  return value;
}

Gray8Image decode_pgm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 2;
  const auto width = next_header_number(bytes, pos);
  const auto height = next_header_number(bytes, pos);
  const auto maxval = next_header_number(bytes, pos);
  if (!width || !height || !maxval || pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw Error(ErrorCode::CorruptImage, "truncated or malformed PGM header");
  }
  ++pos;  // exactly one whitespace byte separates header from raster
  if (*maxval != 255) {
    throw Error(ErrorCode::UnsupportedFormat, "PGM maxval " + std::to_string(*maxval) + " (only 255 supported)");
  }
  if (*width == 0 || *height == 0) throw Error(ErrorCode::CorruptImage, "PGM with zero dimension");
  const std::size_t count = *width * *height;
  if (bytes.size() - pos < count) {
    std::ostringstream msg;
    msg << "PGM raster truncated: expected " << count << " samples, found " << bytes.size() - pos;
    throw Error(ErrorCode::CorruptImage, msg.str());
  }
  Gray8Image image{*width, *height, {}};
  image.samples.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                       bytes.begin() + static_cast<std::ptrdiff_t>(pos + count));
  return image;
}

std::uint32_t read_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
}

Gray8Image decode_png(std::span<const std::uint8_t> bytes) {
  // signature + IHDR length/type + 13-byte IHDR payload
  if (bytes.size() < 8 + 8 + 13 || std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
    throw Error(ErrorCode::CorruptImage, "PNG missing IHDR");
  }
  const std::uint8_t bit_depth = bytes[24];
  const std::uint8_t color_type = bytes[25];
  if (color_type != 0 || bit_depth != 8) {
    std::ostringstream msg;
    msg << "PNG color type " << int{color_type} << ", bit depth " << int{bit_depth}
        << " (only 8-bit grayscale supported)";
    throw Error(ErrorCode::UnsupportedFormat, msg.str());
  }

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::CorruptImage, std::string("PNG: ") + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  Gray8Image out{read_be32(bytes.data() + 16), read_be32(bytes.data() + 20), {}};
  out.samples.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.samples.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::CorruptImage, "PNG: " + message);
  }
  out.width = image.width;
  out.height = image.height;
  return out;
}

}  // namespace

Gray8Image decode_gray8(std::span<const std::uint8_t> bytes) {
  if (is_pgm(bytes)) return decode_pgm(bytes);
  if (is_png(bytes)) return decode_png(bytes);
  throw Error(ErrorCode::UnsupportedFormat, "not a binary PGM (P5) or PNG file");
}

std::vector<std::uint8_t> encode_pgm(const Gray8Image& image) {
  const std::string header =
      "P5\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.samples.begin(), image.samples.end());
  return out;
}

std::vector<std::uint8_t> encode_png(const Gray8Image& image) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, image.samples.data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode: ") + png.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, image.samples.data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode: ") + png.message);
  }
  out.resize(size);
  return out;
}

std::vector<std::uint8_t> encode_gray8(const Gray8Image& image, ImageFormat format) {
  return format == ImageFormat::Png ? encode_png(image) : encode_pgm(image);
}

SaliencyMap read_saliency_frame(std::span<const std::uint8_t> bytes) {
  const Gray8Image image = decode_gray8(bytes);
  std::vector<double> intensities(image.samples.size());
  for (std::size_t i = 0; i < intensities.size(); ++i) intensities[i] = image.samples[i] / 255.0;
  return SaliencyMap(image.width, image.height, std::move(intensities));
}

Gray8Image quantize(const SaliencyMap& map) {
  Gray8Image image{map.width(), map.height(), std::vector<std::uint8_t>(map.size())};
  const auto values = map.intensities();
  for (std::size_t i = 0; i < values.size(); ++i) {
    image.samples[i] = static_cast<std::uint8_t>(std::lround(values[i] * 255.0));
  }
  return image;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for '" + path.string() + "'");
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot create '" + path.string() + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
}

std::string read_file_text(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_file_text(const std::filesystem::path& path, const std::string& text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace salaffect
