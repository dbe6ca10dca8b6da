#include "sumprod/counting.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "sumprod/detail/kernels.hpp"
#include "sumprod/error.hpp"

namespace sumprod {
namespace {

constexpr std::size_t kMaxDegeneracyTerms = 20;

void check_shape(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b) {
  if (k + l == 0) fail(ErrorCode::InvalidArgument, "need k + l >= 1");
  if ((k > 0 && a.empty()) || (l > 0 && b.empty()))
    fail(ErrorCode::InvalidArgument, "representation function of an empty operand");
}

// Runs the convolution on the cheapest integer type and hands the counted
// result plus common denominator to `visit`.
template <class Visit>
auto with_counted(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b,
                  const Budget& budget, Visit visit) {
  check_shape(k, a, l, b);
  const std::array<const FiniteSet*, 2> sets{&a, &b};
  detail::Scaled sc = detail::scale(sets);
  const std::string what = "rep_function";
  if (detail::fits_i64(sc.max_abs * static_cast<unsigned long>(k + l + 1))) {
    auto va = detail::to_i64(sc.sets[0]);
    auto vb = detail::to_i64(sc.sets[1]);
    std::vector<const std::vector<std::int64_t>*> terms(k, &va);
    terms.insert(terms.end(), l, &vb);
    return visit(detail::iterated_convolution(terms, budget, what), sc.denom);
  }
  std::vector<const std::vector<mpz_class>*> terms(k, &sc.sets[0]);
  terms.insert(terms.end(), l, &sc.sets[1]);
  return visit(detail::iterated_convolution(terms, budget, what), sc.denom);
}

mpz_class power(std::size_t base, std::size_t exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

}  // namespace

mpz_class RepFunction::at(const Rational& x) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), x,
                             [](const auto& e, const Rational& v) { return e.first < v; });
  if (it == entries.end() || it->first != x) return 0;
  return it->second;
}

FiniteSet RepFunction::support() const {
  std::vector<Rational> xs;
  xs.reserve(entries.size());
  for (const auto& e : entries) xs.push_back(e.first);
  return FiniteSet::from_sorted_unique(std::move(xs));
}

mpz_class RepFunction::sum_of_squares() const {
  mpz_class s = 0;
  for (const auto& e : entries) s += e.second * e.second;
  return s;
}

RepFunction rep_function(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b,
                         const Budget& budget) {
  RepFunction rf;
  rf.k = k;
  rf.l = l;
  rf.total = power(a.size(), k) * power(b.size(), l);
  with_counted(k, a, l, b, budget, [&](const auto& counted, const mpz_class& denom) {
    rf.entries.reserve(counted.size());
    for (const auto& [v, c] : counted) rf.entries.emplace_back(Rational(mpz_class(v), denom), c);
    return 0;
  });
  return rf;
}

mpz_class mixed_tuples(std::size_t k, const FiniteSet& a, std::size_t l, const FiniteSet& b,
                       const Budget& budget) {
  return with_counted(k, a, l, b, budget, [](const auto& counted, const mpz_class&) {
    mpz_class s = 0;
    for (const auto& e : counted) s += e.second * e.second;
    return s;
  });
}

mpz_class energy(std::size_t h, const FiniteSet& a, const Budget& budget) {
  if (h == 0) fail(ErrorCode::InvalidArgument, "energy needs h >= 1");
  return mixed_tuples(h, a, 0, FiniteSet{}, budget);
}

mpz_class sigma_count(int target, std::size_t k, const FiniteSet& a, std::size_t l,
                      const FiniteSet& b, const Budget& budget) {
  if (target != 0 && target != 1) fail(ErrorCode::InvalidArgument, "sigma target must be 0 or 1");
  return rep_function(k, a, l, b, budget).at(Rational(target));
}

namespace {

template <class T>
bool degenerate_terms(std::span<const T> terms) {
  const std::size_t d = terms.size();
  if (d > kMaxDegeneracyTerms)
    fail(ErrorCode::InvalidArgument, "degeneracy check supports at most 20 terms");
  if (d < 2) return false;
  const std::size_t full = (std::size_t{1} << d) - 1;
  std::vector<T> sums(full + 1);
  sums[0] = T(0);
  for (std::size_t mask = 1; mask < full; ++mask) {
    sums[mask] = sums[mask & (mask - 1)] + terms[static_cast<std::size_t>(std::countr_zero(mask))];
    if (sums[mask] == 0) return true;
  }
  return false;
}

}  // namespace

bool is_degenerate(std::span<const Rational> coeffs, std::span<const Rational> solution) {
  if (coeffs.size() != solution.size() || coeffs.empty())
    fail(ErrorCode::InvalidArgument, "is_degenerate needs equal nonempty lengths");
  std::vector<Rational> terms;
  terms.reserve(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) terms.push_back(coeffs[i] * solution[i]);
  return degenerate_terms(std::span<const Rational>(terms));
}

SolutionCounts nondegenerate_count(std::span<const Rational> coeffs,
                                   std::span<const FiniteSet> domains, const Rational& target,
                                   const Budget& budget) {
  const std::size_t d = coeffs.size();
  if (d == 0 || d != domains.size())
    fail(ErrorCode::InvalidArgument, "nondegenerate_count needs d = |coeffs| = |domains| >= 1");
  if (d > kMaxDegeneracyTerms)
    fail(ErrorCode::InvalidArgument, "nondegenerate_count supports at most 20 variables");
  double space = 1;
  for (const auto& dom : domains) space *= static_cast<double>(dom.size());
  charge(budget, space, "nondegenerate_count");
  SolutionCounts out;
  if (space == 0) return out;

  // Term values c_i * x as scaled integers over one common denominator.
  std::vector<std::vector<Rational>> term_vals(d);
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& x : domains[i]) term_vals[i].push_back(coeffs[i] * x);
  mpz_class denom = target.den();
  for (const auto& tv : term_vals)
    for (const auto& t : tv) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), t.den().get_mpz_t());
  mpz_class max_abs = abs(target.num() * (denom / target.den()));
  std::vector<std::vector<mpz_class>> ints(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& t : term_vals[i]) {
      ints[i].push_back(t.num() * (denom / t.den()));
      if (abs(ints[i].back()) > max_abs) max_abs = abs(ints[i].back());
    }
  }
  const mpz_class tgt = target.num() * (denom / target.den());

  auto run = [&](const auto& vals, const auto& goal) {
    using T = std::decay_t<decltype(goal)>;
    std::vector<std::size_t> idx(d, 0);
    std::vector<T> cur(d);
    for (;;) {
      T s = T(0);
      for (std::size_t i = 0; i < d; ++i) {
        cur[i] = vals[i][idx[i]];
        s += cur[i];
      }
      if (s == goal) {
        ++out.total;
        if (!degenerate_terms(std::span<const T>(cur))) ++out.nondegenerate;
      }
      std::size_t i = 0;
      while (i < d && ++idx[i] == vals[i].size()) idx[i++] = 0;
      if (i == d) break;
    }
  };
  if (detail::fits_i64(max_abs * static_cast<unsigned long>(d + 1))) {
    std::vector<std::vector<std::int64_t>> small;
    for (const auto& v : ints) small.push_back(detail::to_i64(v));
    run(small, tgt.get_si());
  } else {
    run(ints, tgt);
  }
  return out;
}

}  // namespace sumprod
