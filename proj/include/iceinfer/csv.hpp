#pragma once

// Minimal CSV plumbing shared by the two-arm, scatter and options readers.
// Fields are unquoted; lines may end in LF or CRLF; lines starting with '#'
// are comments.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "iceinfer/error.hpp"

namespace iceinfer::csv {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line,
                                           char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

/// Strict decimal parse: the whole cell must be consumed.
inline std::optional<double> parse_double(std::string_view cell) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

inline std::optional<std::uint64_t> parse_uint64(std::string_view cell) {
  cell = trim(cell);
  std::uint64_t value = 0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double value) {
  return fmt::format("{}", value);
}

/// Reads non-blank lines; comment lines are returned separately.
struct Lines {
  std::vector<std::string> comments;
  std::vector<std::string> rows;
};

inline Lines read_lines(std::istream& in) {
  Lines lines;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    auto view = trim(line);
    if (first && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    first = false;
    if (view.empty()) continue;
    if (view.front() == '#')
      lines.comments.emplace_back(trim(view.substr(1)));
    else
      lines.rows.emplace_back(view);
  }
  return lines;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return in;
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

/// Index of each required column in the header row.
template <std::size_t N>
std::array<std::size_t, N> locate_columns(
    const std::vector<std::string_view>& header,
    const std::array<std::string_view, N>& names) {
  std::array<std::size_t, N> index{};
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t found = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == names[k]) {
        found = c;
        break;
      }
    }
    if (found == header.size())
      throw Error(ErrorCode::MissingColumn,
                  fmt::format("missing column '{}'", names[k]));
    index[k] = found;
  }
  return index;
}

}  // namespace iceinfer::csv
