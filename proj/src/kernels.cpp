#include "sumprod/detail/kernels.hpp"

#include "sumprod/error.hpp"

namespace sumprod {

void charge(const Budget& budget, double projected, const std::string& what) {
  if (projected > static_cast<double>(budget.max_work))
    fail(ErrorCode::BudgetExceeded, what + ": projected work " + std::to_string(projected) +
                                        " exceeds max-work " + std::to_string(budget.max_work));
}

void check_card(const Budget& budget, std::size_t n, const std::string& what) {
  if (n > budget.max_card)
    fail(ErrorCode::BudgetExceeded, what + ": |A| = " + std::to_string(n) +
                                        " exceeds max-card " + std::to_string(budget.max_card));
}

namespace detail {

Scaled scale(std::span<const FiniteSet* const> sets) {
  Scaled out;
  for (const auto* s : sets)
    for (const auto& x : *s) mpz_lcm(out.denom.get_mpz_t(), out.denom.get_mpz_t(), x.den().get_mpz_t());
  out.sets.reserve(sets.size());
  for (const auto* s : sets) {
    std::vector<mpz_class> v;
    v.reserve(s->size());
    for (const auto& x : *s) {
      mpz_class scaled = x.num() * (out.denom / x.den());
      if (abs(scaled) > out.max_abs) out.max_abs = abs(scaled);
      v.push_back(std::move(scaled));
    }
    out.sets.push_back(std::move(v));
  }
  return out;
}

bool fits_i64(const mpz_class& bound) {
  static const mpz_class limit = mpz_class(1) << 62;
  return abs(bound) < limit;
}

std::vector<std::int64_t> to_i64(const std::vector<mpz_class>& v) {
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

FiniteSet unscale(const std::vector<std::int64_t>& sorted, const mpz_class& denom) {
  std::vector<Rational> out;
  out.reserve(sorted.size());
  for (auto x : sorted) out.emplace_back(mpz_class(static_cast<long>(x)), denom);
  return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet unscale(const std::vector<mpz_class>& sorted, const mpz_class& denom) {
  std::vector<Rational> out;
  out.reserve(sorted.size());
  for (const auto& x : sorted) out.emplace_back(x, denom);
  return FiniteSet::from_sorted_unique(std::move(out));
}

void ShiftBitset::trim() {
  if (nbits_ % 64 != 0 && !words_.empty())
    words_.back() &= (std::uint64_t{1} << (nbits_ % 64)) - 1;
}

void ShiftBitset::or_shift_up(const ShiftBitset& src, std::size_t shift) {
  const std::size_t ws = shift / 64, bs = shift % 64;
  const std::size_t n = words_.size();
  for (std::size_t i = n; i-- > ws;) {
    std::size_t j = i - ws;
    std::uint64_t v = src.words_[j] << bs;
    if (bs != 0 && j > 0) v |= src.words_[j - 1] >> (64 - bs);
    words_[i] |= v;
  }
  trim();
}

void ShiftBitset::or_shift_down(const ShiftBitset& src, std::size_t shift) {
  const std::size_t ws = shift / 64, bs = shift % 64;
  const std::size_t n = words_.size();
  for (std::size_t i = 0; i + ws < n; ++i) {
    std::size_t j = i + ws;
    std::uint64_t v = src.words_[j] >> bs;
    if (bs != 0 && j + 1 < n) v |= src.words_[j + 1] << (64 - bs);
    words_[i] |= v;
  }
}

std::vector<std::int64_t> bitset_bounded_sums(std::span<const std::int64_t> a, std::int64_t h,
                                              const Budget& budget) {
  std::int64_t pos = 0, negs = 0;
  for (auto x : a) (x >= 0 ? pos : negs) += (x >= 0 ? x : -x);
  const std::int64_t lo = -negs * h;
  const std::int64_t hi = pos * h;
  const double bits = static_cast<double>(hi - lo) + 1;
  charge(budget, bits / 64, "bitset DP window");
  charge(budget, bits / 64 * static_cast<double>(a.size()) * static_cast<double>(h),
         "bitset DP");
  const auto nbits = static_cast<std::size_t>(hi - lo + 1);
  ShiftBitset s(nbits);
  s.set(static_cast<std::size_t>(-lo));
  for (auto x : a) {
    if (x == 0) continue;
    ShiftBitset next = s;
    ShiftBitset layer = s;
    for (std::int64_t e = 1; e <= h; ++e) {
      ShiftBitset shifted(nbits);
      if (x > 0)
        shifted.or_shift_up(layer, static_cast<std::size_t>(x));
      else
        shifted.or_shift_down(layer, static_cast<std::size_t>(-x));
      layer = std::move(shifted);
      next.or_shift_up(layer, 0);
    }
    s = std::move(next);
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < nbits; ++i)
    if (s.test(i)) out.push_back(static_cast<std::int64_t>(i) + lo);
  return out;
}

}  // namespace detail
}  // namespace sumprod
