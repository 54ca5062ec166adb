#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace luxforge {

// Fixed-point rendering used by every CSV writer; negative zero prints as zero.
std::string format_fixed(double value, int places);

// Shortest text that parses back to the same double.
std::string format_shortest(double value);

std::optional<double> parse_double(std::string_view token);

std::string csv_escape(std::string_view field);

std::string read_text_file(const std::filesystem::path& path);

// Writes next to the target and renames on success, so a failed write never
// leaves a partial file behind.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view contents);

// FNV-1a, 64 bit, rendered as 16 lowercase hex digits.
std::string fingerprint(std::string_view bytes);

}  // namespace luxforge
