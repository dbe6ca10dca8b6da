#pragma once

// Brute-force reference implementations and seeded generators shared by the
// test binaries. Everything here enumerates tuples or subsets directly and is
// only meant for tiny inputs.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sumprod/finite_set.hpp"
#include "sumprod/lattice.hpp"

namespace oracle {

using sumprod::FiniteSet;
using sumprod::LatticeSet;
using sumprod::Point;
using sumprod::Rational;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }
  bool coin() { return between(0, 1) == 1; }

  Rational rational(std::int64_t num_range, std::int64_t den_max) {
    const long num = between(-num_range, num_range);
    const long den = between(1, den_max);
    return Rational(mpz_class(num), mpz_class(den));
  }

  /// Up to `max_size` distinct rationals (duplicates collapse).
  FiniteSet rational_set(std::size_t min_size, std::size_t max_size, std::int64_t num_range = 9,
                         std::int64_t den_max = 4) {
    const auto n = static_cast<std::size_t>(between(static_cast<std::int64_t>(min_size),
                                                    static_cast<std::int64_t>(max_size)));
    std::vector<Rational> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(rational(num_range, den_max));
    return FiniteSet(std::move(xs));
  }

  FiniteSet nonzero_rational_set(std::size_t min_size, std::size_t max_size,
                                 std::int64_t num_range = 9, std::int64_t den_max = 4) {
    FiniteSet s = rational_set(min_size, max_size, num_range, den_max).without_zero();
    return s.empty() ? FiniteSet{Rational(1)} : s;
  }

  FiniteSet int_set(std::size_t min_size, std::size_t max_size, std::int64_t lo, std::int64_t hi) {
    const auto n = static_cast<std::size_t>(between(static_cast<std::int64_t>(min_size),
                                                    static_cast<std::int64_t>(max_size)));
    std::vector<Rational> xs;
    for (std::size_t i = 0; i < n; ++i) xs.emplace_back(static_cast<long>(between(lo, hi)));
    return FiniteSet(std::move(xs));
  }

  LatticeSet lattice(std::size_t dim, std::size_t max_size, std::int64_t range) {
    const auto n = static_cast<std::size_t>(between(1, static_cast<std::int64_t>(max_size)));
    std::vector<Point> pts(n, Point(dim));
    for (auto& p : pts)
      for (auto& c : p) c = between(-range, range);
    return LatticeSet(std::move(pts));
  }

 private:
  std::mt19937_64 eng_;
};

inline FiniteSet to_set(const std::set<Rational>& s) {
  return FiniteSet(std::vector<Rational>(s.begin(), s.end()));
}

// Odometer over all tuples of the given sets.
template <class Visit>
void for_each_tuple(const std::vector<const FiniteSet*>& sets, Visit visit) {
  for (const auto* s : sets)
    if (s->empty()) return;
  std::vector<std::size_t> idx(sets.size(), 0);
  std::vector<Rational> cur(sets.size());
  for (;;) {
    for (std::size_t i = 0; i < sets.size(); ++i) cur[i] = (*sets[i])[idx[i]];
    visit(cur);
    std::size_t i = 0;
    while (i < sets.size() && ++idx[i] == sets[i]->size()) idx[i++] = 0;
    if (i == sets.size()) return;
  }
}

inline std::vector<const FiniteSet*> operands(std::size_t k, const FiniteSet& a, std::size_t l,
                                              const FiniteSet& b) {
  std::vector<const FiniteSet*> v(k, &a);
  v.insert(v.end(), l, &b);
  return v;
}

inline std::map<Rational, long> rep(std::size_t k, const FiniteSet& a, std::size_t l,
                                    const FiniteSet& b) {
  std::map<Rational, long> r;
  for_each_tuple(operands(k, a, l, b), [&](const std::vector<Rational>& t) {
    Rational s = 0;
    for (const auto& x : t) s += x;
    ++r[s];
  });
  return r;
}

inline FiniteSet linear_combo(std::size_t k, const FiniteSet& a, std::size_t l,
                              const FiniteSet& b) {
  std::set<Rational> out;
  for (const auto& [x, c] : rep(k, a, l, b)) out.insert(x);
  return to_set(out);
}

inline long sum_of_squares(const std::map<Rational, long>& r) {
  long s = 0;
  for (const auto& [x, c] : r) s += c * c;
  return s;
}

inline FiniteSet sumset(const FiniteSet& a, const FiniteSet& b) {
  std::set<Rational> out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(x + y);
  return to_set(out);
}

inline FiniteSet productset(const FiniteSet& a, const FiniteSet& b) {
  std::set<Rational> out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(x * y);
  return to_set(out);
}

// Sums of e_i * a_i over e in {0..h}^n; h = 1 gives A+.
inline FiniteSet bounded_sums(const FiniteSet& a, std::size_t h) {
  std::set<Rational> out{Rational(0)};
  for (const auto& x : a) {
    std::set<Rational> next;
    for (const auto& s : out)
      for (std::size_t e = 0; e <= h; ++e) next.insert(s + x * Rational(static_cast<long>(e)));
    out = std::move(next);
  }
  return to_set(out);
}

inline FiniteSet subset_sums(const FiniteSet& a) {
  std::set<Rational> out;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s += a[i];
    out.insert(s);
  }
  return to_set(out);
}

inline FiniteSet subset_products(const FiniteSet& a) {
  std::set<Rational> out;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rational p = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) p *= a[i];
    out.insert(p);
  }
  return to_set(out);
}

inline FiniteSet distinct_h_sums(const FiniteSet& a, std::size_t h) {
  std::set<Rational> out;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != h) continue;
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s += a[i];
    out.insert(s);
  }
  return to_set(out);
}

// Any nonempty proper subset of terms summing to zero.
inline bool degenerate(const std::vector<Rational>& terms) {
  const std::size_t d = terms.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << d); ++mask) {
    Rational s = 0;
    for (std::size_t i = 0; i < d; ++i)
      if (mask >> i & 1) s += terms[i];
    if (s.is_zero()) return true;
  }
  return false;
}

struct Counts {
  long nondegenerate = 0;
  long total = 0;
};

inline Counts solutions(const std::vector<Rational>& coeffs, const std::vector<FiniteSet>& domains,
                        const Rational& target) {
  Counts c;
  std::vector<const FiniteSet*> ptrs;
  for (const auto& d : domains) ptrs.push_back(&d);
  for_each_tuple(ptrs, [&](const std::vector<Rational>& x) {
    std::vector<Rational> terms;
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      terms.push_back(coeffs[i] * x[i]);
      s += terms.back();
    }
    if (s != target) return;
    ++c.total;
    if (!degenerate(terms)) ++c.nondegenerate;
  });
  return c;
}

inline LatticeSet lattice_sumset(const LatticeSet& x, const LatticeSet& y) {
  std::vector<Point> pts;
  for (const auto& p : x)
    for (const auto& q : y) {
      Point s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
      pts.push_back(s);
    }
  return LatticeSet(std::move(pts));
}

// Rank over Q of a small integer matrix by fraction-free elimination.
inline std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t affine_dim(const LatticeSet& s) {
  std::vector<std::vector<Rational>> rows;
  const Point& p0 = s.points().front();
  for (const auto& p : s) {
    std::vector<Rational> row;
    for (std::size_t i = 0; i < p.size(); ++i) row.emplace_back(static_cast<long>(p[i] - p0[i]));
    rows.push_back(row);
  }
  return rank(rows);
}

}  // namespace oracle
