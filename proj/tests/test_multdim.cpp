#include <gtest/gtest.h>

#include <set>

#include <map>
#include <sstream>

#include "oracle.hpp"
#include "sumprod/error.hpp"
#include "sumprod/lattice.hpp"
#include "sumprod/multdim.hpp"
#include "sumprod/setalg.hpp"

using namespace sumprod;

namespace {

FiniteSet ints(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return FiniteSet(std::move(v));
}

LatticeSet pts(std::vector<Point> p) { return LatticeSet(std::move(p)); }

// Search exponent vectors in [-r, r]^n for a relation producing -1.
bool brute_minus_one(const ExponentMatrix& m, int r) {
  const std::size_t n = m.rows.size(), cols = m.primes.size();
  std::vector<int> e(n, -r);
  for (;;) {
    std::vector<std::int64_t> sum(cols, 0);
    int parity = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < cols; ++c) sum[c] += e[i] * m.rows[i][c];
      parity += e[i] * m.signs[i];
    }
    if (std::all_of(sum.begin(), sum.end(), [](auto v) { return v == 0; }) && parity % 2 != 0)
      return true;
    std::size_t i = 0;
    while (i < n && ++e[i] > r) e[i++] = -r;
    if (i == n) return false;
  }
}

std::size_t brute_rank(const ExponentMatrix& m) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : m.rows) {
    std::vector<Rational> row;
    for (auto v : r) row.emplace_back(static_cast<long>(v));
    rows.push_back(row);
  }
  return m.primes.empty() ? 0 : oracle::rank(rows);
}

Rational power(const Rational& x, long e) {
  Rational r = 1;
  const Rational b = e < 0 ? x.inverse() : x;
  for (long i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

}  // namespace

TEST(ExponentMatrix, Examples) {
  ExponentMatrix m = exponent_matrix(ints({2, 4, 8}));
  ASSERT_EQ(m.primes.size(), 1u);
  EXPECT_EQ(m.primes[0], 2);
  EXPECT_EQ(m.rows, (std::vector<std::vector<std::int64_t>>{{1}, {2}, {3}}));
  EXPECT_EQ(m.signs, (std::vector<std::uint8_t>{0, 0, 0}));

  m = exponent_matrix(ints({-2, 2}));
  EXPECT_EQ(m.rows, (std::vector<std::vector<std::int64_t>>{{1}, {1}}));
  EXPECT_EQ(m.signs, (std::vector<std::uint8_t>{1, 0}));

  m = exponent_matrix(ints({0, 1}));
  EXPECT_TRUE(m.primes.empty());
  EXPECT_EQ(m.rows.size(), 1u);
  EXPECT_EQ(m.signs, (std::vector<std::uint8_t>{0}));

  EXPECT_THROW(exponent_matrix(ints({0})), Error);
  EXPECT_THROW(exponent_matrix({}), Error);
}

TEST(MultDim, Examples) {
  EXPECT_FALSE(contains_minus_one(exponent_matrix(ints({2, 4, 8}))));
  EXPECT_TRUE(contains_minus_one(exponent_matrix(ints({-2, 2}))));
  EXPECT_TRUE(contains_minus_one(exponent_matrix(ints({-1}))));
  EXPECT_EQ(mult_dim(ints({1})), 0u);
  EXPECT_EQ(mult_dim(ints({2, 4, 8})), 1u);
  EXPECT_EQ(mult_dim(ints({-2, 2})), 2u);
  EXPECT_EQ(mult_dim(ints({2, 3})), 2u);
  EXPECT_EQ(mult_dim(ints({0, 6, 10, 15})), 3u);
  EXPECT_EQ(mult_dim(ints({-2, 4, -8})), 1u);
  EXPECT_EQ(mult_dim(ints({-2, 2, 4})), 2u);
  try {
    mult_dim(ints({0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyStarSet);
  }
}

TEST(MultDim, MinusOneNeedsNonUnitCoefficients) {
  // -6 * (2/3) / (-4) = 1: the only relation has even parity.
  FiniteSet a{Rational(-6), Rational(mpz_class(2), mpz_class(3)), Rational(-4)};
  EXPECT_FALSE(contains_minus_one(exponent_matrix(a)));
  EXPECT_EQ(mult_dim(a), 2u);
  // (-2)^3 / 8 = -1.
  EXPECT_TRUE(contains_minus_one(exponent_matrix(ints({-2, 8}))));
  EXPECT_EQ(mult_dim(ints({-2, 8})), 2u);
  // (-2)^3 / (-8) = 1 and (-2)^2 / 4 = 1.
  EXPECT_FALSE(contains_minus_one(exponent_matrix(ints({-2, 4, -8}))));
}

TEST(MultDim, KernelIsExactAndSaturated) {
  oracle::Gen g(31);
  for (int i = 0; i < 100; ++i) {
    FiniteSet a = g.nonzero_rational_set(1, 6, 12, 12);
    ExponentMatrix m = exponent_matrix(a);
    auto kernel = saturated_left_kernel(m);
    EXPECT_EQ(kernel.size(), m.rows.size() - exponent_rank(m));
    for (const auto& z : kernel) {
      for (std::size_t c = 0; c < m.primes.size(); ++c) {
        mpz_class s = 0;
        for (std::size_t r = 0; r < m.rows.size(); ++r) s += z[r] * m.rows[r][c];
        EXPECT_EQ(s, 0);
      }
    }
    EXPECT_EQ(exponent_rank(m), brute_rank(m));
  }
}

TEST(MultDim, MinusOneMatchesSearch) {
  oracle::Gen g(32);
  for (int i = 0; i < 150; ++i) {
    FiniteSet a = g.int_set(1, 4, -12, 12).without_zero();
    if (a.empty()) continue;
    ExponentMatrix m = exponent_matrix(a);
    EXPECT_EQ(contains_minus_one(m), brute_minus_one(m, 4)) << to_string(a);
  }
}

TEST(MultDim, BoundedByStarSizeAndInversionInvariant) {
  oracle::Gen g(33);
  for (int i = 0; i < 100; ++i) {
    FiniteSet a = g.nonzero_rational_set(1, 8, 30, 8);
    std::vector<Rational> inv;
    for (const auto& x : a) inv.push_back(x.inverse());
    EXPECT_LE(mult_dim(a), a.size());
    EXPECT_EQ(mult_dim(a), mult_dim(FiniteSet(inv)));
  }
}

TEST(Embedding, Examples) {
  Embedding e = embed(ints({2, 4, 8}));
  EXPECT_EQ(e.free_rank, 1u);
  EXPECT_FALSE(e.torsion);
  EXPECT_EQ(e.coord_of(Rational(2)), (Coordinate{0, {1}}));
  EXPECT_EQ(e.coord_of(Rational(4)), (Coordinate{0, {2}}));
  EXPECT_EQ(e.coord_of(Rational(8)), (Coordinate{0, {3}}));
  EXPECT_EQ(coordinate_bounded_sum_count(e, 1), 7u);
  EXPECT_EQ(subset_products(ints({2, 4, 8})).size(), 7u);

  e = embed(ints({2, 3}));
  EXPECT_EQ(e.coord_of(Rational(2)), (Coordinate{0, {1, 0}}));
  EXPECT_EQ(e.coord_of(Rational(3)), (Coordinate{0, {0, 1}}));

  e = embed(ints({-1}));
  EXPECT_EQ(e.free_rank, 0u);
  EXPECT_TRUE(e.torsion);
  EXPECT_EQ(e.coord_of(Rational(-1)), (Coordinate{1, {}}));
  EXPECT_EQ(mult_dim(e), 1u);

  // 4 and 6 generate a rank-2 group; the basis is in the saturation of the
  // row lattice, so coordinates are integral.
  e = embed(ints({4, 6}));
  EXPECT_EQ(e.free_rank, 2u);
  EXPECT_EQ(e.vector_image(ints({4, 6})).size(), 2u);
  EXPECT_THROW(e.coord_of(Rational(5)), Error);
}

TEST(Embedding, InjectiveHomomorphism) {
  oracle::Gen g(34);
  for (int i = 0; i < 60; ++i) {
    FiniteSet a = g.nonzero_rational_set(1, 5, 12, 6);
    Embedding e = embed(a);
    // Coordinates of A* are pairwise distinct.
    std::set<Coordinate> seen(e.coords.begin(), e.coords.end());
    EXPECT_EQ(seen.size(), a.size());
    // Products of powers agree iff the coordinate combinations agree.
    std::map<Rational, Coordinate> by_value;
    for (int trial = 0; trial < 30; ++trial) {
      Rational prod = 1;
      Coordinate c{0, Point(e.free_rank, 0)};
      for (std::size_t j = 0; j < a.size(); ++j) {
        const long k = g.between(-2, 2);
        prod *= power(a[j], k);
        const Coordinate& cj = e.coord_of(a[j]);
        c.sign_bit = static_cast<std::uint8_t>((c.sign_bit + (k & 1) * cj.sign_bit) % 2);
        for (std::size_t t = 0; t < e.free_rank; ++t) c.vec[t] += k * cj.vec[t];
      }
      auto [it, fresh] = by_value.emplace(prod, c);
      if (!fresh) {
        EXPECT_EQ(it->second, c) << prod.to_string();
      }
      for (const auto& [v, cv] : by_value) {
        if (cv == c) {
          EXPECT_EQ(v, prod);
        }
      }
    }
  }
}

TEST(Embedding, SubsetProductsMatchCoordinateSums) {
  oracle::Gen g(35);
  for (int i = 0; i < 100; ++i) {
    FiniteSet a = g.nonzero_rational_set(1, 12, 20, 5);
    Embedding e = embed(a);
    EXPECT_EQ(subset_products(a).size(), coordinate_bounded_sum_count(e, 1)) << to_string(a);
  }
}

TEST(Embedding, BoundedCoordinateSumsMatchProducts) {
  // |nu(A)+[h]| is the number of distinct products of a_i^{e_i}, 0 <= e_i <= h.
  oracle::Gen g(36);
  for (int i = 0; i < 60; ++i) {
    FiniteSet a = g.nonzero_rational_set(1, 6, 30, 6);
    const auto h = static_cast<std::size_t>(g.between(1, 3));
    std::set<Rational> prods{Rational(1)};
    for (const auto& x : a) {
      std::set<Rational> next;
      for (const auto& p : prods) {
        Rational q = p;
        for (std::size_t e = 0; e <= h; ++e, q *= x) next.insert(q);
      }
      prods = std::move(next);
    }
    EXPECT_EQ(coordinate_bounded_sum_count(embed(a), h), prods.size()) << to_string(a) << ' ' << h;
  }
}

TEST(Lattice, SumsetExamples) {
  LatticeSet y = pts({{3, 1}, {-1, 2}});
  EXPECT_EQ(lattice_sumset(pts({{0, 0}}), y), y);
  LatticeSet simplex = pts({{0, 0}, {1, 0}, {0, 1}});
  EXPECT_EQ(lattice_sumset(simplex, simplex),
            pts({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}));
  EXPECT_EQ(lattice_sumset(pts({{0}, {1}}), pts({{0}, {2}})), pts({{0}, {1}, {2}, {3}}));
  EXPECT_THROW(lattice_sumset(pts({{0}}), pts({{0, 0}})), Error);
  EXPECT_THROW(pts({{0}, {0, 1}}), Error);
}

TEST(Lattice, AffineDimExamples) {
  EXPECT_EQ(affine_dim(pts({{5, 5}})), 0u);
  EXPECT_EQ(affine_dim(pts({{0, 0}, {1, 1}, {2, 2}})), 1u);
  EXPECT_EQ(affine_dim(pts({{0, 0}, {1, 0}, {0, 1}})), 2u);
  EXPECT_THROW(affine_dim(LatticeSet{}), Error);
}

TEST(Lattice, AffineDimProperties) {
  oracle::Gen g(36);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = static_cast<std::size_t>(g.between(1, 4));
    LatticeSet x = g.lattice(d, 6, 3), y = g.lattice(d, 6, 3);
    LatticeSet s = lattice_sumset(x, y);
    EXPECT_EQ(s, oracle::lattice_sumset(x, y));
    EXPECT_EQ(affine_dim(s), oracle::affine_dim(s));
    EXPECT_LE(affine_dim(s), affine_dim(x) + affine_dim(y));
  }
}

TEST(Lattice, ParseAndWrite) {
  std::istringstream in("# pts\n1, 2\n0,0\n1,2\n");
  LatticeSet s = parse_lattice_set(in);
  EXPECT_EQ(s, pts({{0, 0}, {1, 2}}));
  std::ostringstream out;
  write_lattice_set(out, s);
  EXPECT_EQ(out.str(), "0,0\n1,2\n");
  std::istringstream bad("1,2\n3\n");
  EXPECT_THROW(parse_lattice_set(bad), Error);
}

TEST(Lattice, HermiteReduction) {
  oracle::Gen g(37);
  for (int i = 0; i < 100; ++i) {
    const auto rows = static_cast<std::size_t>(g.between(0, 5));
    const auto cols = static_cast<std::size_t>(g.between(1, 5));
    IntMatrix m(rows, std::vector<mpz_class>(cols));
    for (auto& r : m)
      for (auto& v : r) v = g.between(-6, 6);
    Echelon h = hermite_reduce(m, cols);
    // form = U * m
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < rows; ++k) s += h.transform[r][k] * m[k][c];
        EXPECT_EQ(s, h.form[r][c]);
      }
    // Pivots positive, entries above pivots reduced, rows below rank zero.
    for (std::size_t r = 0; r < h.rank; ++r) {
      const std::size_t pc = h.pivot_cols[r];
      EXPECT_GT(h.form[r][pc], 0);
      for (std::size_t up = 0; up < r; ++up) {
        EXPECT_GE(h.form[up][pc], 0);
        EXPECT_LT(h.form[up][pc], h.form[r][pc]);
      }
      for (std::size_t c = 0; c < pc; ++c) EXPECT_EQ(h.form[r][c], 0);
    }
    for (std::size_t r = h.rank; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) EXPECT_EQ(h.form[r][c], 0);
    std::vector<std::vector<Rational>> q;
    for (const auto& r : m) {
      std::vector<Rational> row;
      for (const auto& v : r) row.emplace_back(v);
      q.push_back(row);
    }
    EXPECT_EQ(h.rank, rows ? oracle::rank(q) : 0u);
  }
}
