#include <charconv>
#include <sstream>
#include <string>

#include "glc/error.hpp"
#include "glc/linalg.hpp"

namespace glc::linalg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Fe parse_element(const Field& field, std::string_view token) {
  token = trim(token);
  int value = -1;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    throw Error(ErrorCode::ParseError, "bad field element '" + std::string(token) + "'");
  if (!field.valid(value))
    throw Error(ErrorCode::ParseError, "field element " + std::to_string(value) + " outside [0, " +
                                           std::to_string(field.q() - 1) + "]");
  return static_cast<Fe>(value);
}

}  // namespace

Matrix parse_matrix(const Field& field, std::string_view text) {
  const auto rows = split(trim(text), ';');
  const int n = static_cast<int>(rows.size());
  std::vector<Fe> entries;
  for (auto row : rows) {
    const auto cells = split(row, ',');
    if (static_cast<int>(cells.size()) != n)
      throw Error(ErrorCode::ParseError, "matrix '" + std::string(text) + "' is not square");
    for (auto cell : cells) entries.push_back(parse_element(field, cell));
  }
  return Matrix(field, n, std::move(entries));
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  for (int i = 0; i < m.n(); ++i) {
    if (i > 0) out << ';';
    for (int j = 0; j < m.n(); ++j) {
      if (j > 0) out << ',';
      out << static_cast<int>(m.at(i, j));
    }
  }
  return out.str();
}

Poly parse_poly(const Field& field, std::string_view text) {
  std::vector<Fe> coeffs;
  if (!trim(text).empty())
    for (auto cell : split(trim(text), ',')) coeffs.push_back(parse_element(field, cell));
  return Poly(field, std::move(coeffs));
}

std::string format_vec(const Vec& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out << ',';
    out << static_cast<int>(v[i]);
  }
  return out.str();
}

std::string format_poly(const Poly& f) { return format_vec(f.coeffs()); }

std::string format_subspace(const Subspace& s) {
  std::string out;
  for (std::size_t i = 0; i < s.basis().size(); ++i) {
    if (i > 0) out += ';';
    out += format_vec(s.basis()[i]);
  }
  return out;
}

}  // namespace glc::linalg
