#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pmd/block_function.hpp"
#include "pmd/error.hpp"
#include "pmd/metric.hpp"

namespace pmd::io {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Shortest decimal text that reads back to the same double; "inf" for +inf.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

inline double parse_double(std::string_view token, const std::string& where) {
  token = trim(token);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw Error(ErrorKind::Parse, where + ": cannot read number '" + std::string(token) + "'");
  }
  return value;
}

inline std::size_t parse_index(std::string_view token, const std::string& where) {
  token = trim(token);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw Error(ErrorKind::Parse, where + ": cannot read index '" + std::string(token) + "'");
  }
  return value;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Points read from a coordinate file, plus each coordinate's trimmed text
/// (used for exact textual mapping inference).
struct PointCloud {
  std::vector<Point> points;
  std::vector<std::vector<std::string>> text;
};

/// One point per non-blank line, comma-separated coordinates.
inline PointCloud parse_points(std::string_view content, const std::string& name) {
  PointCloud cloud;
  std::size_t line_no = 0;
  for (auto line : split(content, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    Point p;
    std::vector<std::string> text;
    for (auto tok : split(line, ',')) {
      p.push_back(parse_double(tok, where));
      text.emplace_back(trim(tok));
    }
    if (!cloud.points.empty() && p.size() != cloud.points.front().size()) {
      throw Error(ErrorKind::DimensionMismatch, where + ": point has " +
                                                    std::to_string(p.size()) +
                                                    " coordinates, expected " +
                                                    std::to_string(cloud.points.front().size()));
    }
    cloud.points.push_back(std::move(p));
    cloud.text.push_back(std::move(text));
  }
  return cloud;
}

/// First line n, then n-1 lines with the strict lower triangle row by row.
inline FiniteMetricSpace parse_distance_matrix(std::string_view content, const std::string& name) {
  std::vector<std::string_view> lines;
  std::vector<std::size_t> numbers;
  std::size_t line_no = 0;
  for (auto line : split(content, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    lines.push_back(line);
    numbers.push_back(line_no);
  }
  if (lines.empty()) throw Error(ErrorKind::Parse, name + ": empty distance-matrix file");
  const std::size_t n = parse_index(lines[0], name + ":" + std::to_string(numbers[0]));
  if (n == 0) throw Error(ErrorKind::Parse, name + ": point count must be positive");
  if (lines.size() != n) {
    throw Error(ErrorKind::Parse, name + ": expected " + std::to_string(n - 1) +
                                      " lower-triangle rows, found " +
                                      std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<double>> rows;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const std::string where = name + ":" + std::to_string(numbers[r]);
    const auto tokens = split_whitespace(lines[r]);
    if (tokens.size() != r) {
      throw Error(ErrorKind::Parse, where + ": row " + std::to_string(r) + " needs " +
                                        std::to_string(r) + " entries, found " +
                                        std::to_string(tokens.size()));
    }
    std::vector<double> row;
    for (auto tok : tokens) row.push_back(parse_double(tok, where));
    rows.push_back(std::move(row));
  }
  try {
    return FiniteMetricSpace::from_lower_triangle(n, rows);
  } catch (const Error& e) {
    throw Error(e.kind() == ErrorKind::DuplicatePoint ? ErrorKind::DuplicatePoint
                                                      : ErrorKind::Parse,
                name + ": " + e.message());
  }
}

/// Lines "i j": domain index i maps to codomain index j. Every domain index
/// must appear exactly once.
inline SetMapping parse_mapping(std::string_view content, const std::string& name,
                                std::size_t domain_size, std::size_t codomain_size) {
  std::vector<std::size_t> target(domain_size, codomain_size);
  std::vector<std::size_t> seen_at(domain_size, 0);
  std::size_t line_no = 0;
  for (auto line : split(content, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    const auto tokens = split_whitespace(line);
    if (tokens.size() != 2) {
      throw Error(ErrorKind::InvalidMapping, where + ": expected 'i j'");
    }
    std::size_t i = 0, j = 0;
    try {
      i = parse_index(tokens[0], where);
      j = parse_index(tokens[1], where);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidMapping, e.message());
    }
    if (i >= domain_size) {
      throw Error(ErrorKind::InvalidMapping, where + ": domain index " + std::to_string(i) +
                                                 " out of range (domain has " +
                                                 std::to_string(domain_size) + " points)");
    }
    if (j >= codomain_size) {
      throw Error(ErrorKind::InvalidMapping, where + ": codomain index " + std::to_string(j) +
                                                 " out of range (codomain has " +
                                                 std::to_string(codomain_size) + " points)");
    }
    if (seen_at[i]) {
      throw Error(ErrorKind::InvalidMapping, where + ": domain index " + std::to_string(i) +
                                                 " already mapped on line " +
                                                 std::to_string(seen_at[i]));
    }
    seen_at[i] = line_no;
    target[i] = j;
  }
  for (std::size_t i = 0; i < domain_size; ++i)
    if (!seen_at[i])
      throw Error(ErrorKind::InvalidMapping, name + ": domain index " + std::to_string(i) +
                                                 " has no image");
  return SetMapping(std::move(target), codomain_size);
}

/// Maps each domain point to the codomain point with identical coordinate
/// text (after trimming whitespace around each coordinate).
inline SetMapping infer_mapping(const PointCloud& domain, const PointCloud& codomain) {
  std::map<std::vector<std::string>, std::size_t> index;
  for (std::size_t j = 0; j < codomain.text.size(); ++j) index.emplace(codomain.text[j], j);
  std::vector<std::size_t> target;
  target.reserve(domain.text.size());
  for (std::size_t i = 0; i < domain.text.size(); ++i) {
    auto it = index.find(domain.text[i]);
    if (it == index.end()) {
      std::string joined;
      for (const auto& t : domain.text[i]) joined += (joined.empty() ? "" : ",") + t;
      throw Error(ErrorKind::InvalidMapping, "domain point " + std::to_string(i) + " (" + joined +
                                                 ") does not appear in the codomain file");
    }
    target.push_back(it->second);
  }
  return SetMapping(std::move(target), codomain.text.size());
}

}  // namespace pmd::io
