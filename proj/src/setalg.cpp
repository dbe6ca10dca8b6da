#include "sumprod/setalg.hpp"

#include <array>
#include <cmath>

#include "sumprod/detail/kernels.hpp"
#include "sumprod/error.hpp"
#include "sumprod/multdim.hpp"

namespace sumprod {
namespace {

using detail::fits_i64;
using detail::Scaled;

Scaled scale_one(const FiniteSet& a) {
  const std::array<const FiniteSet*, 1> sets{&a};
  return detail::scale(sets);
}

mpz_class abs_sum(const std::vector<mpz_class>& v) {
  mpz_class s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

}  // namespace

FiniteSet sumset(const FiniteSet& a, const FiniteSet& b, const Budget& budget) {
  if (a.empty() || b.empty()) return {};
  charge(budget, static_cast<double>(a.size()) * static_cast<double>(b.size()), "sumset");
  const std::array<const FiniteSet*, 2> sets{&a, &b};
  Scaled sc = detail::scale(sets);
  if (fits_i64(sc.max_abs * 2)) {
    auto out = detail::pair_sums(detail::to_i64(sc.sets[0]), detail::to_i64(sc.sets[1]));
    return detail::unscale(out, sc.denom);
  }
  return detail::unscale(detail::pair_sums(sc.sets[0], sc.sets[1]), sc.denom);
}

FiniteSet productset(const FiniteSet& a, const FiniteSet& b, const Budget& budget) {
  if (a.empty() || b.empty()) return {};
  charge(budget, static_cast<double>(a.size()) * static_cast<double>(b.size()), "productset");
  std::vector<Rational> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return FiniteSet(std::move(out));
}

FiniteSet linear_combo(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b,
                       const Budget& budget) {
  if (k + l == 0) fail(ErrorCode::InvalidArgument, "linear_combo needs k + l >= 1");
  if ((k > 0 && a.empty()) || (l > 0 && b.empty()))
    fail(ErrorCode::InvalidArgument, "linear_combo needs nonempty operands");
  const std::array<const FiniteSet*, 2> sets{&a, &b};
  Scaled sc = detail::scale(sets);
  const std::string what = "linear_combo";
  if (fits_i64(sc.max_abs * static_cast<unsigned long>(k + l + 1))) {
    auto va = detail::to_i64(sc.sets[0]);
    auto vb = detail::to_i64(sc.sets[1]);
    std::vector<const std::vector<std::int64_t>*> terms(k, &va);
    terms.insert(terms.end(), l, &vb);
    return detail::unscale(detail::iterated_sumset(terms, budget, what), sc.denom);
  }
  std::vector<const std::vector<mpz_class>*> terms(k, &sc.sets[0]);
  terms.insert(terms.end(), l, &sc.sets[1]);
  return detail::unscale(detail::iterated_sumset(terms, budget, what), sc.denom);
}

FiniteSet difference_combo(std::size_t n, std::size_t m, const FiniteSet& b,
                           const Budget& budget) {
  if (n + m == 0) fail(ErrorCode::InvalidArgument, "difference_combo needs n + m >= 1");
  if (b.empty()) fail(ErrorCode::InvalidArgument, "difference_combo needs nonempty B");
  std::vector<Rational> negated;
  negated.reserve(b.size());
  for (auto it = b.elements().rbegin(); it != b.elements().rend(); ++it) negated.push_back(-*it);
  return linear_combo(n, b, m, FiniteSet::from_sorted_unique(std::move(negated)), budget);
}

const char* to_string(SubsetSumBackend b) {
  switch (b) {
    case SubsetSumBackend::Auto: return "auto";
    case SubsetSumBackend::Naive: return "naive";
    case SubsetSumBackend::MeetInMiddle: return "mitm";
    case SubsetSumBackend::BitsetDP: return "bitset";
  }
  return "?";
}

namespace {

bool bitset_window_fits(const FiniteSet& a, std::size_t h, const Budget& budget) {
  if (!a.all_integer()) return false;
  mpz_class window = 1;
  for (const auto& x : a) window += abs(x.num()) * static_cast<unsigned long>(h);
  if (!fits_i64(window)) return false;
  const double words = window.get_d() / 64;
  return words <= static_cast<double>(budget.max_work) &&
         words * static_cast<double>(a.size()) * static_cast<double>(h) <=
             static_cast<double>(budget.max_work);
}

}  // namespace

SubsetSumBackend choose_subset_sum_backend(const FiniteSet& a, const Budget& budget) {
  if (bitset_window_fits(a, 1, budget)) return SubsetSumBackend::BitsetDP;
  if (a.size() <= 16) return SubsetSumBackend::Naive;
  return SubsetSumBackend::MeetInMiddle;
}

FiniteSet subset_sums(const FiniteSet& a, const Budget& budget, SubsetSumBackend backend) {
  if (backend == SubsetSumBackend::Auto) backend = choose_subset_sum_backend(a, budget);
  Scaled sc = scale_one(a);
  const auto& v = sc.sets[0];
  const mpz_class total = abs_sum(v);

  if (backend == SubsetSumBackend::BitsetDP) {
    if (!a.all_integer())
      fail(ErrorCode::InvalidArgument, "bitset subset-sum backend needs an all-integer set");
    if (!fits_i64(total)) fail(ErrorCode::Overflow, "bitset window exceeds 64-bit range");
    auto vi = detail::to_i64(v);
    return detail::unscale(detail::bitset_bounded_sums(vi, 1, budget), sc.denom);
  }

  check_card(budget, a.size(), "subset_sums");
  const std::size_t n = a.size();
  const double full = std::ldexp(1.0, static_cast<int>(n));
  if (backend == SubsetSumBackend::Naive) {
    charge(budget, full, "subset_sums (naive)");
  } else {
    const double halves = std::ldexp(1.0, static_cast<int>(n / 2)) +
                          std::ldexp(1.0, static_cast<int>(n - n / 2));
    charge(budget, halves + full, "subset_sums (meet-in-the-middle)");
  }
  auto run = [&](const auto& vals) {
    using T = typename std::decay_t<decltype(vals)>::value_type;
    std::span<const T> s(vals);
    return backend == SubsetSumBackend::Naive ? detail::naive_subset_sums(s)
                                              : detail::mitm_subset_sums(s);
  };
  if (fits_i64(total)) return detail::unscale(run(detail::to_i64(v)), sc.denom);
  return detail::unscale(run(v), sc.denom);
}

FiniteSet subset_products(const FiniteSet& a, const Budget& budget) {
  check_card(budget, a.size(), "subset_products");
  FiniteSet star = a.without_zero();
  std::vector<Rational> values;
  if (star.empty()) {
    values.emplace_back(1);
  } else {
    ExponentMatrix em = exponent_matrix(star);
    using Vec = std::vector<std::int64_t>;
    // entry 0 is the sign parity, then one exponent per prime
    std::vector<Vec> items;
    items.reserve(em.rows.size());
    for (std::size_t i = 0; i < em.rows.size(); ++i) {
      Vec v;
      v.reserve(em.primes.size() + 1);
      v.push_back(em.signs[i] ? 1 : 0);
      v.insert(v.end(), em.rows[i].begin(), em.rows[i].end());
      items.push_back(std::move(v));
    }
    Vec zero(em.primes.size() + 1, 0);
    auto add = [](Vec x, const Vec& y) {
      x[0] = (x[0] + y[0]) & 1;
      for (std::size_t j = 1; j < x.size(); ++j) x[j] += y[j];
      return x;
    };
    auto sums = detail::incremental_bounded_sums(items, 1, zero, add, budget, "subset_products");
    values.reserve(sums.size() + 1);
    for (const auto& s : sums) {
      mpz_class num = 1, den = 1;
      for (std::size_t j = 1; j < s.size(); ++j) {
        if (s[j] == 0) continue;
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), em.primes[j - 1].get_mpz_t(),
                   static_cast<unsigned long>(s[j] > 0 ? s[j] : -s[j]));
        (s[j] > 0 ? num : den) *= pe;
      }
      if (s[0]) num = -num;
      values.emplace_back(num, den);
    }
  }
  if (a.contains_zero()) values.emplace_back(0);
  return FiniteSet(std::move(values));
}

FiniteSet distinct_h_sums(const FiniteSet& a, std::size_t h, const Budget& budget) {
  if (h > a.size()) return {};  // no h-element subsets
  Scaled sc = scale_one(a);
  auto run = [&](const auto& vals) {
    using T = typename std::decay_t<decltype(vals)>::value_type;
    // layers[j] = sums of j distinct elements among those seen so far
    std::vector<std::vector<T>> layers(h + 1);
    layers[0] = {T(0)};
    double work = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      for (std::size_t j = std::min(i + 1, h); j >= 1; --j) {
        if (layers[j - 1].empty()) continue;
        work += static_cast<double>(layers[j - 1].size() + layers[j].size());
        charge(budget, work, "distinct_h_sums");
        std::vector<T> merged = layers[j];
        merged.reserve(merged.size() + layers[j - 1].size());
        for (const auto& x : layers[j - 1]) merged.push_back(x + vals[i]);
        detail::sort_unique(merged);
        layers[j] = std::move(merged);
      }
    }
    return layers[h];
  };
  if (fits_i64(abs_sum(sc.sets[0]))) return detail::unscale(run(detail::to_i64(sc.sets[0])), sc.denom);
  return detail::unscale(run(sc.sets[0]), sc.denom);
}

FiniteSet bounded_simple_sums(const FiniteSet& a, std::size_t h, const Budget& budget) {
  if (h == 0) return FiniteSet{Rational(0)};
  if (bitset_window_fits(a, h, budget)) {
    Scaled sc = scale_one(a);
    auto vi = detail::to_i64(sc.sets[0]);
    return detail::unscale(detail::bitset_bounded_sums(vi, static_cast<std::int64_t>(h), budget),
                           sc.denom);
  }
  Scaled sc = scale_one(a);
  const auto hh = static_cast<std::int64_t>(h);
  auto add = [](auto x, const auto& y) -> decltype(x) { return x + y; };
  if (fits_i64(abs_sum(sc.sets[0]) * static_cast<unsigned long>(h + 1))) {
    auto vi = detail::to_i64(sc.sets[0]);
    return detail::unscale(detail::incremental_bounded_sums(vi, hh, std::int64_t{0}, add, budget,
                                                            "bounded_simple_sums"),
                           sc.denom);
  }
  return detail::unscale(detail::incremental_bounded_sums(sc.sets[0], hh, mpz_class(0), add,
                                                          budget, "bounded_simple_sums"),
                         sc.denom);
}

GProxy g_proxy(const FiniteSet& a, const Budget& budget) {
  GProxy g;
  g.aplus = subset_sums(a, budget).size();
  g.atimes = subset_products(a, budget).size();
  g.g = g.aplus + g.atimes;
  return g;
}

}  // namespace sumprod
