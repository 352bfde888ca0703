#pragma once

// Finite words over X = {0, ..., d-1} and eventually periodic infinite words
// (boundary points of the d-ary tree) in canonical form.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "spinal/error.hpp"

namespace spinal {

using Letter = std::uint32_t;

class FiniteWord {
public:
  FiniteWord() = default;
  FiniteWord(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit FiniteWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// n copies of one letter.
  static FiniteWord repeat(Letter letter, std::size_t n);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter& operator[](std::size_t i) { return letters_[i]; }
  Letter back() const { return letters_.back(); }

  void push_back(Letter letter) { letters_.push_back(letter); }
  void pop_back() { letters_.pop_back(); }
  FiniteWord& operator+=(const FiniteWord& other);
  FiniteWord prefix(std::size_t n) const;
  FiniteWord suffix_from(std::size_t start) const;

  friend FiniteWord operator+(FiniteWord lhs, const FiniteWord& rhs) { return lhs += rhs; }
  friend auto operator<=>(const FiniteWord&, const FiniteWord&) = default;

private:
  std::vector<Letter> letters_;
};

/// Throws ParameterError if some letter is >= d.
void check_word(const FiniteWord& w, int d);

/// Infinite word u v v v ... stored canonically: v is primitive and either u is
/// empty or its last letter differs from the last letter of v. Two canonical
/// points are equal iff they denote the same infinite word.
class BoundaryPoint {
public:
  /// The constant word (0)^infinity.
  BoundaryPoint() : period_({0}) {}

  const FiniteWord& preperiod() const { return pre_; }
  const FiniteWord& period() const { return period_; }

  Letter letter_at(std::size_t n) const;
  /// First n letters.
  FiniteWord prefix(std::size_t n) const;

  friend auto operator<=>(const BoundaryPoint&, const BoundaryPoint&) = default;

private:
  friend BoundaryPoint canonicalize(FiniteWord u, FiniteWord v);
  FiniteWord pre_;
  FiniteWord period_;
};

BoundaryPoint canonicalize(FiniteWord u, FiniteWord v);

/// (letter)^infinity.
BoundaryPoint constant_point(Letter letter);

/// w followed by xi.
BoundaryPoint prepend(const FiniteWord& w, const BoundaryPoint& xi);

/// Same point with the letter at position n replaced.
BoundaryPoint with_letter(const BoundaryPoint& xi, std::size_t n, Letter letter);

Letter letter_at(const BoundaryPoint& xi, std::size_t n);
BoundaryPoint shift(const BoundaryPoint& xi, std::size_t k);

/// Minimal R with shift(xi, R) == shift(eta, R); nullopt when not cofinal.
std::optional<std::size_t> discrepancy(const BoundaryPoint& xi, const BoundaryPoint& eta);

bool cofinal(const BoundaryPoint& xi, const BoundaryPoint& eta);
/// True iff xi is cofinal with (d-1)^infinity.
bool cofinal_with_spine(const BoundaryPoint& xi, int d);

/// Letters as contiguous digits for d <= 10, comma separated otherwise.
std::string format_word(const FiniteWord& w, int d);
FiniteWord parse_word(const std::string& text, int d);

/// `u(v)` with the letter convention of format_word.
std::string format_point(const BoundaryPoint& xi, int d);
/// Parses and canonicalizes `u(v)`.
BoundaryPoint parse_point(const std::string& text, int d);

struct FiniteWordHash {
  std::size_t operator()(const FiniteWord& w) const noexcept;
};

struct BoundaryPointHash {
  std::size_t operator()(const BoundaryPoint& xi) const noexcept;
};

} // namespace spinal
