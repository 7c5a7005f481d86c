#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salaffect {

/// "%.17g". The single float formatting used by every report artifact, so
/// JSON and CSV values are string-identical.
std::string format_fixed17(double value);

/// Shortest representation that parses back to the same double.
std::string format_shortest(double value);

/// Strict full-string parses; nullopt-like failure is signalled by `false`.
bool parse_double(std::string_view text, double& out);
bool parse_size(std::string_view text, std::size_t& out);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char delim);
std::string to_lower(std::string_view s);

/// FNV-1a, 64 bit. Chainable through `seed`.
inline constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes, std::uint64_t seed = kFnvOffset);
std::uint64_t fnv1a64(std::string_view text, std::uint64_t seed = kFnvOffset);
std::string hex64(std::uint64_t value);

}  // namespace salaffect
