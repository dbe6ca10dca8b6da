#pragma once

/**
 * Exponent-lattice machinery for subsets of Q*.
 *
 * Every nonzero rational is sign * prod p^e, so A* = A \ {0} generates a
 * subgroup of Q* isomorphic to (torsion part) + Z^r where r is the rank of the
 * exponent rows and the torsion part is {+1, -1} exactly when -1 lies in the
 * generated group. The multiplicative dimension (minimum generator count) is
 * r plus one for the torsion.
 */

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sumprod/budget.hpp"
#include "sumprod/finite_set.hpp"
#include "sumprod/lattice.hpp"

namespace sumprod {

struct ExponentMatrix {
  /// Strictly increasing primes occurring in A*.
  std::vector<mpz_class> primes;
  /// One row per element of A*, in set order.
  std::vector<std::vector<std::int64_t>> rows;
  /// 1 iff the element is negative.
  std::vector<std::uint8_t> signs;
  /// The elements of A* the rows describe.
  std::vector<Rational> elements;
};

/// Throws EmptyStarSet when A is contained in {0}.
ExponentMatrix exponent_matrix(const FiniteSet& a);

/// Basis of all integer z with sum z_i * row_i = 0 (saturated by construction).
std::vector<std::vector<mpz_class>> saturated_left_kernel(const ExponentMatrix& m);

std::size_t exponent_rank(const ExponentMatrix& m);

/// True iff -1 is in <A*>: some saturated-kernel vector has odd signed parity.
bool contains_minus_one(const ExponentMatrix& m);

/// Exponent rank plus one when -1 is in <A*>. Throws EmptyStarSet.
std::size_t mult_dim(const FiniteSet& a);

struct Coordinate {
  std::uint8_t sign_bit = 0;
  Point vec;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
  friend auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

/// Injective homomorphism <A*> -> Z/2 + Z^r restricted to A*.
struct Embedding {
  std::size_t free_rank = 0;
  /// Hermite basis of the saturation of the exponent-row lattice, in prime
  /// coordinates (one entry per prime of `primes`).
  std::vector<Point> basis;
  std::vector<mpz_class> primes;
  bool torsion = false;
  std::vector<Rational> elements;
  std::vector<Coordinate> coords;

  /// Coordinate of an element of A*; throws InvalidArgument otherwise.
  const Coordinate& coord_of(const Rational& x) const;
  /// Z^r parts of the coordinates of the nonzero elements of `subset`.
  LatticeSet vector_image(const FiniteSet& subset) const;
};

/// Throws EmptyStarSet.
Embedding embed(const FiniteSet& a);

/// |nu(A)+[h]| where nu(A) are the coordinates of all of A* and sums are
/// taken in Z/2 + Z^r: the number of distinct sum e_i * nu(a_i), e_i in 0..h.
/// With stop_at > 0 the count may stop early at a value >= stop_at, which is
/// then only a lower bound; *partial tells whether that happened.
std::size_t coordinate_bounded_sum_count(const Embedding& e, std::size_t h,
                                         const Budget& budget = {}, std::size_t stop_at = 0,
                                         bool* partial = nullptr);

/// Multiplicative dimension of an embedding's group.
inline std::size_t mult_dim(const Embedding& e) { return e.free_rank + (e.torsion ? 1 : 0); }

}  // namespace sumprod
