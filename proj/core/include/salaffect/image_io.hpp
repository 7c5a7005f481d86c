#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "salaffect/types.hpp"

namespace salaffect {

enum class ImageFormat { Pgm, Png };

/// 8-bit single-channel raster, row-major.
struct Gray8Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> samples;

  friend bool operator==(const Gray8Image&, const Gray8Image&) = default;
};

/// Sniffs the magic bytes. Binary PGM ("P5", maxval 255) and 8-bit grayscale
/// PNG are accepted; anything else throws Error(UnsupportedFormat), and a
/// recognised but damaged file throws Error(CorruptImage).
Gray8Image decode_gray8(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_pgm(const Gray8Image& image);
std::vector<std::uint8_t> encode_png(const Gray8Image& image);
std::vector<std::uint8_t> encode_gray8(const Gray8Image& image, ImageFormat format);

/// Maps every 8-bit sample v to v/255.
SaliencyMap read_saliency_frame(std::span<const std::uint8_t> bytes);

/// Inverse quantisation used when writing maps: round(v*255).
Gray8Image quantize(const SaliencyMap& map);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::string read_file_text(const std::filesystem::path& path);
void write_file_text(const std::filesystem::path& path, const std::string& text);

}  // namespace salaffect
