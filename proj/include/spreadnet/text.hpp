#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace spreadnet {

/// Nine significant digits, shortest %g form. glibc rounds the exact binary
/// value, with exact ties going to even under the default rounding mode.
std::string format_real(double value);

std::string_view trim(std::string_view s) noexcept;

/// Splits on `sep` and trims each field. No quoting support.
std::vector<std::string> split_fields(std::string_view line, char sep = ',');

/// Parses a finite double; throws ParseError with `source`/`line` context.
double parse_real(std::string_view text, const std::string& source, std::size_t line);
std::uint64_t parse_unsigned(std::string_view text, const std::string& source, std::size_t line);

std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace spreadnet
