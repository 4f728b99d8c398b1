#include "spreadnet/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "spreadnet/errors.hpp"

namespace spreadnet {

namespace {

std::string join_lines(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    out += "\n  ";
    out += item;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : DataError(fmt::format("invalid network ({} violation(s)):{}", violations.size(), join_lines(violations))),
      violations_(std::move(violations)) {}

ActorMismatchError::ActorMismatchError(std::vector<std::string> only_left, std::vector<std::string> only_right)
    : DataError(fmt::format("actor sets differ; only in first: [{}]; only in second: [{}]",
                            fmt::join(only_left, ", "), fmt::join(only_right, ", "))),
      only_left_(std::move(only_left)),
      only_right_(std::move(only_right)) {}

std::string format_real(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buffer[64];
  const int len = std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return std::string(buffer, static_cast<std::size_t>(len));
}

std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view text, const std::string& source, std::size_t line) {
  text = trim(text);
  // std::from_chars for double is unavailable in libstdc++ 11 for all targets; strtod is locale-"C" here.
  std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(value)) {
    throw ParseError(source, line, fmt::format("expected a real number, got '{}'", text));
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view text, const std::string& source, std::size_t line) {
  text = trim(text);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(source, line, fmt::format("expected a non-negative integer, got '{}'", text));
  }
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", tmp.string()));
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(fmt::format("write failed for '{}'", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace spreadnet
