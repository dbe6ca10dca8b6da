#pragma once

// Integer kernels shared by setalg, multdim and counting. Rational operands
// are first scaled to a common denominator, then the work happens on int64
// when the result range provably fits and on mpz_class otherwise.

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/budget.hpp"
#include "sumprod/finite_set.hpp"

namespace sumprod::detail {

struct Scaled {
  mpz_class denom = 1;
  /// One integer vector per input set; value = entry / denom.
  std::vector<std::vector<mpz_class>> sets;
  /// max |entry| over all sets
  mpz_class max_abs = 0;
};

Scaled scale(std::span<const FiniteSet* const> sets);

/// True when `bound` < 2^62, leaving headroom for a final addition.
bool fits_i64(const mpz_class& bound);

std::vector<std::int64_t> to_i64(const std::vector<mpz_class>& v);

FiniteSet unscale(const std::vector<std::int64_t>& sorted, const mpz_class& denom);
FiniteSet unscale(const std::vector<mpz_class>& sorted, const mpz_class& denom);

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <class T>
std::vector<T> pair_sums(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x + y);
  sort_unique(out);
  return out;
}

/// All 2^n subset sums (with repetition), one per mask; not deduplicated.
template <class T>
std::vector<T> all_subset_sums(std::span<const T> a) {
  const std::size_t n = a.size();
  std::vector<T> s(std::size_t{1} << n);
  s[0] = T(0);
  for (std::size_t mask = 1; mask < s.size(); ++mask) {
    int low = std::countr_zero(mask);
    s[mask] = s[mask & (mask - 1)] + a[low];
  }
  return s;
}

template <class T>
std::vector<T> naive_subset_sums(std::span<const T> a) {
  auto s = all_subset_sums(a);
  sort_unique(s);
  return s;
}

/// Deduplicated half sums combined pairwise.
template <class T>
std::vector<T> mitm_subset_sums(std::span<const T> a) {
  const std::size_t half = a.size() / 2;
  auto left = naive_subset_sums(a.subspan(0, half));
  auto right = naive_subset_sums(a.subspan(half));
  return pair_sums(left, right);
}

/// Dense bit vector over a window of consecutive integers.
class ShiftBitset {
 public:
  explicit ShiftBitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t size() const { return nbits_; }

  /// *this |= src << shift (towards higher indices), bits past the end dropped.
  void or_shift_up(const ShiftBitset& src, std::size_t shift);
  /// *this |= src >> shift (towards lower indices).
  void or_shift_down(const ShiftBitset& src, std::size_t shift);

 private:
  void trim();
  std::size_t nbits_;
  std::vector<std::uint64_t> words_;
};

/// Subset sums of an integer multiset by shift-or DP. Each element may be
/// used 0..h times (h = 1 gives plain subset sums).
std::vector<std::int64_t> bitset_bounded_sums(std::span<const std::int64_t> a, std::int64_t h,
                                              const Budget& budget);

/// S_0 = {zero}; S_{i+1} = union over e in 0..h of (S_i + e*a_i), deduplicated
/// at each step. Works for any totally ordered additive type. Since
/// S_i is contained in S_{i+1}, a nonzero stop_at may end the scan as soon as
/// |S_i| >= stop_at; the partial set is returned and *stopped is set.
template <class T, class AddFn>
std::vector<T> incremental_bounded_sums(const std::vector<T>& items, std::int64_t h, T zero,
                                        AddFn add, const Budget& budget,
                                        const std::string& what, std::size_t stop_at = 0,
                                        bool* stopped = nullptr) {
  std::vector<T> s{zero};
  double work = 0;
  for (const auto& item : items) {
    if (stop_at && s.size() >= stop_at) {
      if (stopped) *stopped = true;
      break;
    }
    work += static_cast<double>(s.size()) * static_cast<double>(h + 1);
    charge(budget, work, what);
    std::vector<T> next;
    next.reserve(s.size() * static_cast<std::size_t>(h + 1));
    std::vector<T> layer = s;
    next.insert(next.end(), layer.begin(), layer.end());
    for (std::int64_t e = 1; e <= h; ++e) {
      for (auto& x : layer) x = add(x, item);
      next.insert(next.end(), layer.begin(), layer.end());
    }
    sort_unique(next);
    s = std::move(next);
  }
  return s;
}

/// Iterated dedup sumset: terms[0] + terms[1] + ..., each step projected
/// against the budget.
template <class T>
std::vector<T> iterated_sumset(const std::vector<const std::vector<T>*>& terms,
                               const Budget& budget, const std::string& what) {
  std::vector<T> acc{T(0)};
  double work = 0;
  for (const auto* t : terms) {
    work += static_cast<double>(acc.size()) * static_cast<double>(t->size());
    charge(budget, work, what);
    acc = pair_sums(acc, *t);
  }
  return acc;
}

/// Sorted (value, multiplicity) list representing a representation function.
template <class T>
using Counted = std::vector<std::pair<T, mpz_class>>;

/// Convolves the running representation function with one more summand set
/// (each element of `next` with multiplicity 1), merging equal values.
template <class T>
Counted<T> convolve(const Counted<T>& cur, const std::vector<T>& next) {
  Counted<T> out;
  out.reserve(cur.size() * next.size());
  for (const auto& [x, c] : cur)
    for (const auto& y : next) out.emplace_back(x + y, c);
  std::sort(out.begin(), out.end(),
            [](const auto& p, const auto& q) { return p.first < q.first; });
  Counted<T> merged;
  for (auto& p : out) {
    if (!merged.empty() && merged.back().first == p.first)
      merged.back().second += p.second;
    else
      merged.push_back(std::move(p));
  }
  return merged;
}

template <class T>
Counted<T> iterated_convolution(const std::vector<const std::vector<T>*>& terms,
                                const Budget& budget, const std::string& what) {
  Counted<T> acc{{T(0), mpz_class(1)}};
  double work = 0;
  for (const auto* t : terms) {
    work += static_cast<double>(acc.size()) * static_cast<double>(t->size());
    charge(budget, work, what);
    acc = convolve(acc, *t);
  }
  return acc;
}

}  // namespace sumprod::detail
