#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sumprod/rational.hpp"

namespace sumprod {

/// Strictly increasing list of rationals.
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::initializer_list<Rational> xs);
  /// Sorts and deduplicates.
  explicit FiniteSet(std::vector<Rational> xs);

  /// Caller guarantees `xs` is already strictly increasing.
  static FiniteSet from_sorted_unique(std::vector<Rational> xs);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const std::vector<Rational>& elements() const { return elems_; }
  std::span<const Rational> span() const { return elems_; }
  const Rational& operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  bool contains(const Rational& x) const;
  bool all_integer() const;
  bool contains_zero() const { return contains(Rational(0)); }
  /// A* = A \ {0}.
  FiniteSet without_zero() const;

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<Rational> elems_;
};

FiniteSet set_union(const FiniteSet& a, const FiniteSet& b);
FiniteSet set_intersection(const FiniteSet& a, const FiniteSet& b);

/// One rational per line, '#' comments, blank lines ignored. Duplicates are
/// merged; their count is reported through `duplicates` when non-null.
FiniteSet parse_set(std::istream& in, std::size_t* duplicates = nullptr);
/// Reads a set file, warning on stderr about merged duplicates.
FiniteSet read_set_file(const std::string& path);
void write_set(std::ostream& out, const FiniteSet& s);

std::string to_string(const FiniteSet& s);

}  // namespace sumprod
