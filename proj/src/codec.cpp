#include "pmcanon/codec.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <sstream>
#include <string_view>

namespace pmcanon {

template <class Tag>
std::optional<std::uint64_t> Code<Tag>::value(std::size_t k) const noexcept {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t v = 0;
  for (Digit d : element(k)) {
    if (v > (kMax - d) / base_) return std::nullopt;
    v = v * base_ + d;
  }
  return v;
}

template <class Tag>
std::string Code<Tag>::render(std::size_t k) const {
  if (auto v = value(k)) return std::to_string(*v);
  std::string out;
  for (Digit d : element(k)) {
    if (!out.empty()) out += '.';
    out += std::to_string(d);
  }
  out += '_';
  out += std::to_string(base_);
  return out;
}

template <class Tag>
std::string Code<Tag>::render() const {
  std::string out;
  for (std::size_t k = 0; k < size(); ++k) {
    if (k) out += ' ';
    out += render(k);
  }
  return out;
}

template class Code<RowTag>;
template class Code<ColTag>;

RowCode encode_rows(const Matrix& a) {
  auto e = a.entries();
  return RowCode(a.cols(), a.base(), std::vector<Digit>(e.begin(), e.end()));
}

ColCode encode_cols(const Matrix& a) {
  auto t = a.transpose();
  auto e = t.entries();
  return ColCode(a.rows(), a.base(), std::vector<Digit>(e.begin(), e.end()));
}

Matrix decode_rows(const RowCode& code) {
  auto d = code.digits();
  return Matrix(code.size(), code.width(), code.base(),
                std::vector<Digit>(d.begin(), d.end()));
}

// ---- text format ----------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Unsigned decimal token. Overflow is a range error, anything else a parse
// error.
std::uint64_t parse_uint(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw RangeError("line " + std::to_string(line_no) + ": value '" +
                     std::string(tok) + "' out of range");
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) +
                     ": expected a decimal integer, got '" + std::string(tok) +
                     "'");
  return v;
}

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;

  bool next(std::string& line) {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  }
};

std::optional<Matrix> read_matrix_impl(LineReader& rd) {
  std::string line;
  std::string_view head;
  for (;;) {
    if (!rd.next(line)) return std::nullopt;
    head = trim(line);
    if (!head.empty() && head.front() != '#') break;
  }
  auto toks = split_ws(head);
  if (toks.size() != 3)
    throw ParseError("line " + std::to_string(rd.line_no) +
                     ": header must be 'n m p'");
  const auto n = parse_uint(toks[0], rd.line_no);
  const auto m = parse_uint(toks[1], rd.line_no);
  const auto p = parse_uint(toks[2], rd.line_no);
  if (n == 0 || m == 0)
    throw ParseError("line " + std::to_string(rd.line_no) +
                     ": n and m must be >= 1");
  if (p < 2 || p > kMaxBase)
    throw ParseError("line " + std::to_string(rd.line_no) + ": p must be in [2, " +
                     std::to_string(kMaxBase) + "]");

  std::vector<Digit> entries;
  entries.reserve(n * m);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!rd.next(line))
      throw ParseError("unexpected end of input: expected " + std::to_string(n) +
                       " rows");
    auto cells = split_ws(trim(line));
    if (cells.size() != m)
      throw ParseError("line " + std::to_string(rd.line_no) + ": expected " +
                       std::to_string(m) + " entries, got " +
                       std::to_string(cells.size()));
    for (auto c : cells) {
      auto v = parse_uint(c, rd.line_no);
      if (v >= p)
        throw RangeError("line " + std::to_string(rd.line_no) + ": digit " +
                         std::to_string(v) + " outside [0, " +
                         std::to_string(p - 1) + "]");
      entries.push_back(static_cast<Digit>(v));
    }
  }
  return Matrix(n, m, static_cast<unsigned>(p), std::move(entries));
}

}  // namespace

std::optional<Matrix> read_matrix(std::istream& in) {
  LineReader rd{in};
  return read_matrix_impl(rd);
}

Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  LineReader rd{in};
  auto a = read_matrix_impl(rd);
  if (!a) throw ParseError("no matrix found");
  std::string line;
  while (rd.next(line)) {
    auto t = trim(line);
    if (!t.empty() && t.front() != '#')
      throw ParseError("line " + std::to_string(rd.line_no) +
                       ": unexpected content after matrix");
  }
  return *std::move(a);
}

std::vector<Matrix> parse_matrices(const std::string& text) {
  std::istringstream in(text);
  LineReader rd{in};
  std::vector<Matrix> out;
  while (auto a = read_matrix_impl(rd)) out.push_back(*std::move(a));
  return out;
}

std::string format_matrix(const Matrix& a) {
  std::string out = std::to_string(a.rows()) + ' ' + std::to_string(a.cols()) +
                    ' ' + std::to_string(a.base()) + '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ' ';
      out += std::to_string(a(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace pmcanon
