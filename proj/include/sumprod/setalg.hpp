#pragma once

/**
 * Exact finite-set algebra over the rationals: sumsets, productsets,
 * iterated combinations kA + lB, subset sums A+ and subset products A^x.
 *
 * 0 and negative elements are allowed everywhere. Conventions for the empty
 * subset: 0 is always in A+ and 1 is always in A^x.
 */

#include <cstddef>
#include <cstdint>

#include "sumprod/budget.hpp"
#include "sumprod/finite_set.hpp"

namespace sumprod {

FiniteSet sumset(const FiniteSet& a, const FiniteSet& b, const Budget& budget = {});
FiniteSet productset(const FiniteSet& a, const FiniteSet& b, const Budget& budget = {});

/// All sums of k elements of A and l elements of B, repetition allowed.
/// Requires k + l >= 1 and nonempty operands for nonzero multiplicities.
FiniteSet linear_combo(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b,
                       const Budget& budget = {});

/// nB - mB.
FiniteSet difference_combo(std::size_t n, std::size_t m, const FiniteSet& b,
                           const Budget& budget = {});

enum class SubsetSumBackend { Auto, Naive, MeetInMiddle, BitsetDP };

const char* to_string(SubsetSumBackend b);

/// Backend Auto picks: bitset DP for all-integer sets whose sum window fits the
/// budget, naive enumeration for n <= 16, meet-in-the-middle otherwise.
SubsetSumBackend choose_subset_sum_backend(const FiniteSet& a, const Budget& budget = {});

/// A+.
FiniteSet subset_sums(const FiniteSet& a, const Budget& budget = {},
                      SubsetSumBackend backend = SubsetSumBackend::Auto);

/// A^x. Nonzero elements go through their prime-exponent vectors; a set
/// containing 0 additionally yields 0.
FiniteSet subset_products(const FiniteSet& a, const Budget& budget = {});

/// Sums over all h-element subsets; empty when h > |A|.
FiniteSet distinct_h_sums(const FiniteSet& a, std::size_t h, const Budget& budget = {});

/// A+[h]: all sums of e_i * a_i with e_i in {0, ..., h}.
FiniteSet bounded_simple_sums(const FiniteSet& a, std::size_t h, const Budget& budget = {});

struct GProxy {
  std::size_t aplus = 0;
  std::size_t atimes = 0;
  std::size_t g = 0;

  friend bool operator==(const GProxy&, const GProxy&) = default;
};

/// (|A+|, |A^x|, |A+| + |A^x|).
GProxy g_proxy(const FiniteSet& a, const Budget& budget = {});

}  // namespace sumprod
