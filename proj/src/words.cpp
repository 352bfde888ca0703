#include "spinal/words.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace spinal {

FiniteWord FiniteWord::repeat(Letter letter, std::size_t n) {
  return FiniteWord(std::vector<Letter>(n, letter));
}

FiniteWord& FiniteWord::operator+=(const FiniteWord& other) {
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
  return *this;
}

FiniteWord FiniteWord::prefix(std::size_t n) const {
  n = std::min(n, letters_.size());
  return FiniteWord(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<long>(n)));
}

FiniteWord FiniteWord::suffix_from(std::size_t start) const {
  start = std::min(start, letters_.size());
  return FiniteWord(std::vector<Letter>(letters_.begin() + static_cast<long>(start), letters_.end()));
}

void check_word(const FiniteWord& w, int d) {
  for (Letter x : w.letters())
    if (x >= static_cast<Letter>(d))
      throw ParameterError("letter " + std::to_string(x) + " out of range for d=" + std::to_string(d));
}

Letter BoundaryPoint::letter_at(std::size_t n) const {
  if (n < pre_.size()) return pre_[n];
  return period_[(n - pre_.size()) % period_.size()];
}

FiniteWord BoundaryPoint::prefix(std::size_t n) const {
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = letter_at(i);
  return FiniteWord(std::move(out));
}

namespace {

std::size_t primitive_root_length(const FiniteWord& v) {
  const std::size_t n = v.size();
  for (std::size_t t = 1; t < n; ++t) {
    if (n % t != 0) continue;
    bool periodic = true;
    for (std::size_t i = t; i < n && periodic; ++i) periodic = v[i] == v[i - t];
    if (periodic) return t;
  }
  return n;
}

} // namespace

BoundaryPoint canonicalize(FiniteWord u, FiniteWord v) {
  if (v.empty()) throw ParameterError("period of a boundary point must be nonempty");
  v = v.prefix(primitive_root_length(v));
  std::vector<Letter> period = v.letters();
  std::vector<Letter> pre = u.letters();
  while (!pre.empty() && pre.back() == period.back()) {
    pre.pop_back();
    std::rotate(period.begin(), period.end() - 1, period.end());
  }
  BoundaryPoint xi;
  xi.pre_ = FiniteWord(std::move(pre));
  xi.period_ = FiniteWord(std::move(period));
  return xi;
}

BoundaryPoint constant_point(Letter letter) { return canonicalize({}, FiniteWord{letter}); }

BoundaryPoint prepend(const FiniteWord& w, const BoundaryPoint& xi) {
  return canonicalize(w + xi.preperiod(), xi.period());
}

BoundaryPoint with_letter(const BoundaryPoint& xi, std::size_t n, Letter letter) {
  const std::size_t len = std::max(xi.preperiod().size(), n + 1);
  FiniteWord u = xi.prefix(len);
  u[n] = letter;
  return prepend(u, shift(xi, len));
}

Letter letter_at(const BoundaryPoint& xi, std::size_t n) { return xi.letter_at(n); }

BoundaryPoint shift(const BoundaryPoint& xi, std::size_t k) {
  const auto& u = xi.preperiod();
  const auto& v = xi.period();
  if (k <= u.size()) return canonicalize(u.suffix_from(k), v);
  const std::size_t r = (k - u.size()) % v.size();
  std::vector<Letter> rotated = v.letters();
  std::rotate(rotated.begin(), rotated.begin() + static_cast<long>(r), rotated.end());
  return canonicalize({}, FiniteWord(std::move(rotated)));
}

std::optional<std::size_t> discrepancy(const BoundaryPoint& xi, const BoundaryPoint& eta) {
  const std::size_t k = std::max(xi.preperiod().size(), eta.preperiod().size());
  const std::size_t l = std::lcm(xi.period().size(), eta.period().size());
  for (std::size_t i = k; i < k + l; ++i)
    if (xi.letter_at(i) != eta.letter_at(i)) return std::nullopt;
  std::size_t r = k;
  while (r > 0 && xi.letter_at(r - 1) == eta.letter_at(r - 1)) --r;
  return r;
}

bool cofinal(const BoundaryPoint& xi, const BoundaryPoint& eta) {
  return discrepancy(xi, eta).has_value();
}

bool cofinal_with_spine(const BoundaryPoint& xi, int d) {
  return xi.period().size() == 1 && xi.period()[0] == static_cast<Letter>(d - 1);
}

std::string format_word(const FiniteWord& w, int d) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (d > 10 && i) out += ",";
    out += std::to_string(w[i]);
  }
  return out;
}

FiniteWord parse_word(const std::string& raw, int d) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  std::vector<Letter> letters;
  if (d <= 10) {
    for (char c : text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError("unexpected character in word '" + raw + "'");
      letters.push_back(static_cast<Letter>(c - '0'));
    }
  } else if (!text.empty()) {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      const std::string token = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                              : comma - start);
      if (token.empty() || !std::all_of(token.begin(), token.end(),
                                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("bad letter in word '" + raw + "'");
      if (token.size() > 9) throw ParseError("letter too large in word '" + raw + "'");
      letters.push_back(static_cast<Letter>(std::stoul(token)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  FiniteWord w(std::move(letters));
  for (Letter x : w.letters())
    if (x >= static_cast<Letter>(d))
      throw ParseError("letter " + std::to_string(x) + " out of range in '" + raw + "'");
  return w;
}

std::string format_point(const BoundaryPoint& xi, int d) {
  std::string out = format_word(xi.preperiod(), d);
  if (d > 10 && !xi.preperiod().empty()) out += ",";
  return out + "(" + format_word(xi.period(), d) + ")";
}

BoundaryPoint parse_point(const std::string& raw, int d) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  const auto open = text.find('(');
  if (text.empty() || open == std::string::npos || text.back() != ')' || text.find('(', open + 1) != std::string::npos)
    throw ParseError("boundary point must look like u(v): '" + raw + "'");
  std::string u = text.substr(0, open);
  if (d > 10 && !u.empty() && u.back() == ',') u.pop_back();
  const std::string v = text.substr(open + 1, text.size() - open - 2);
  if (v.empty()) throw ParseError("empty period in '" + raw + "'");
  return canonicalize(parse_word(u, d), parse_word(v, d));
}

std::size_t FiniteWordHash::operator()(const FiniteWord& w) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
  for (Letter x : w.letters()) h = (h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
  return h;
}

std::size_t BoundaryPointHash::operator()(const BoundaryPoint& xi) const noexcept {
  FiniteWordHash hw;
  return hw(xi.preperiod()) * 31 + hw(xi.period());
}

} // namespace spinal
