#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sumprod/budget.hpp"
#include "sumprod/finite_set.hpp"

namespace sumprod {

/// r_{kA+lB}: number of ordered tuples (a_1..a_k, b_1..b_l) summing to x.
struct RepFunction {
  std::size_t k = 0;
  std::size_t l = 0;
  /// Sorted by value; multiplicities positive.
  std::vector<std::pair<Rational, mpz_class>> entries;
  /// |A|^k |B|^l.
  mpz_class total = 0;

  /// 0 when x is not a sum.
  mpz_class at(const Rational& x) const;
  FiniteSet support() const;
  /// sum of r(x)^2
  mpz_class sum_of_squares() const;
};

/// Iterated support convolution; never materializes the tuple space.
RepFunction rep_function(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b,
                         const Budget& budget = {});

/// Number of solutions of x_1+...+x_h = x_{h+1}+...+x_{2h} in A.
mpz_class energy(std::size_t h, const FiniteSet& a, const Budget& budget = {});

/// Number of additive 2(k+l)-tuples in A^{2k} x B^{2l}.
mpz_class mixed_tuples(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b,
                       const Budget& budget = {});

/// Ordered solutions of a_1+...+a_k+b_1+...+b_l = target, target in {0, 1}.
mpz_class sigma_count(int target, std::size_t k, const FiniteSet& a, std::size_t l,
                      const FiniteSet& b, const Budget& budget = {});

/// True iff some proper nonempty subsum of coeffs_i * solution_i vanishes.
bool is_degenerate(std::span<const Rational> coeffs, std::span<const Rational> solution);

struct SolutionCounts {
  mpz_class nondegenerate = 0;
  mpz_class total = 0;

  friend bool operator==(const SolutionCounts&, const SolutionCounts&) = default;
};

/// Solutions of sum coeffs_i x_i = target with x_i in domains_i.
SolutionCounts nondegenerate_count(std::span<const Rational> coeffs,
                                   std::span<const FiniteSet> domains, const Rational& target,
                                   const Budget& budget = {});

}  // namespace sumprod
