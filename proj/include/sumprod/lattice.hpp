#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sumprod/budget.hpp"

namespace sumprod {

using Point = std::vector<std::int64_t>;

/// Deduplicated, sorted points of a common dimension.
class LatticeSet {
 public:
  LatticeSet() = default;
  /// Throws DimensionMismatch when points disagree on dimension.
  explicit LatticeSet(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  /// 0 for the empty set.
  std::size_t dim() const { return points_.empty() ? 0 : points_.front().size(); }
  const std::vector<Point>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const LatticeSet&, const LatticeSet&) = default;

 private:
  std::vector<Point> points_;
};

/// Pointwise Minkowski sum. Throws DimensionMismatch.
LatticeSet lattice_sumset(const LatticeSet& x, const LatticeSet& y, const Budget& budget = {});

/// Rank of {p - p0}. Throws EmptySet.
std::size_t affine_dim(const LatticeSet& s);

/// One point per line, comma-separated integers; '#' comments.
LatticeSet parse_lattice_set(std::istream& in);
LatticeSet read_lattice_file(const std::string& path);
void write_lattice_set(std::ostream& out, const LatticeSet& s);
std::string to_string(const Point& p);

// Exact integer matrices for the lattice computations in multdim.
using IntMatrix = std::vector<std::vector<mpz_class>>;

struct Echelon {
  /// U * input, in Hermite normal form: pivots positive, entries above each
  /// pivot reduced into [0, pivot), zero rows last.
  IntMatrix form;
  /// Unimodular U.
  IntMatrix transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

/// `cols` is needed when the matrix has no rows.
Echelon hermite_reduce(IntMatrix m, std::size_t cols);

IntMatrix transpose(const IntMatrix& m, std::size_t cols);

}  // namespace sumprod
