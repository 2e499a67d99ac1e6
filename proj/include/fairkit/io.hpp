#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fairkit::io {

/// Whole-file read; throws DataError naming the path on failure.
std::string read_text(const std::filesystem::path& path);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, std::string_view text);
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

/// Splits on ',' without quoting support; fields are trimmed of spaces and '\r'.
std::vector<std::string> split_csv(std::string_view line);

std::string_view trim(std::string_view s);

/// True for blank lines and '#' comment lines.
bool is_skippable(std::string_view line);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view text, const std::string& what);
long long parse_integer(std::string_view text, const std::string& what);

}  // namespace fairkit::io
