#include "sumprod/multdim.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "sumprod/detail/kernels.hpp"
#include "sumprod/error.hpp"
#include "sumprod/factor.hpp"

namespace sumprod {
namespace {

IntMatrix rows_as_mpz(const ExponentMatrix& m) {
  IntMatrix out;
  out.reserve(m.rows.size());
  for (const auto& r : m.rows) {
    std::vector<mpz_class> row;
    row.reserve(r.size());
    for (auto v : r) row.emplace_back(static_cast<long>(v));
    out.push_back(std::move(row));
  }
  return out;
}

std::int64_t to_i64_checked(const mpz_class& v) {
  if (!v.fits_slong_p()) fail(ErrorCode::Overflow, "lattice coordinate exceeds 64 bits");
  return v.get_si();
}

}  // namespace

ExponentMatrix exponent_matrix(const FiniteSet& a) {
  FiniteSet star = a.without_zero();
  if (star.empty()) fail(ErrorCode::EmptyStarSet, "A* is empty");
  std::vector<FactoredElement> fs;
  fs.reserve(star.size());
  std::map<mpz_class, std::size_t> index;
  for (const auto& x : star) {
    fs.push_back(factor(x));
    for (const auto& pp : fs.back().factors) index.emplace(pp.prime, 0);
  }
  ExponentMatrix m;
  for (auto& [p, i] : index) {
    i = m.primes.size();
    m.primes.push_back(p);
  }
  m.elements = star.elements();
  for (const auto& f : fs) {
    std::vector<std::int64_t> row(m.primes.size(), 0);
    for (const auto& pp : f.factors) row[index.at(pp.prime)] = pp.exponent;
    m.rows.push_back(std::move(row));
    m.signs.push_back(f.sign < 0 ? 1 : 0);
  }
  return m;
}

std::size_t exponent_rank(const ExponentMatrix& m) {
  return hermite_reduce(rows_as_mpz(m), m.primes.size()).rank;
}

std::vector<std::vector<mpz_class>> saturated_left_kernel(const ExponentMatrix& m) {
  Echelon e = hermite_reduce(rows_as_mpz(m), m.primes.size());
  // U * R = H with U unimodular: the rows of U matching zero rows of H form a
  // basis of the full integer kernel.
  return {e.transform.begin() + static_cast<std::ptrdiff_t>(e.rank), e.transform.end()};
}

bool contains_minus_one(const ExponentMatrix& m) {
  for (const auto& z : saturated_left_kernel(m)) {
    mpz_class parity = 0;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (m.signs[i]) parity += z[i];
    if (mpz_odd_p(parity.get_mpz_t())) return true;
  }
  return false;
}

std::size_t mult_dim(const FiniteSet& a) {
  ExponentMatrix m = exponent_matrix(a);
  return exponent_rank(m) + (contains_minus_one(m) ? 1 : 0);
}

const Coordinate& Embedding::coord_of(const Rational& x) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), x);
  if (it == elements.end() || *it != x)
    fail(ErrorCode::InvalidArgument, x.to_string() + " is not an embedded element");
  return coords[static_cast<std::size_t>(it - elements.begin())];
}

LatticeSet Embedding::vector_image(const FiniteSet& subset) const {
  std::vector<Point> pts;
  for (const auto& x : subset)
    if (!x.is_zero()) pts.push_back(coord_of(x).vec);
  return LatticeSet(std::move(pts));
}

Embedding embed(const FiniteSet& a) {
  ExponentMatrix m = exponent_matrix(a);
  const std::size_t p = m.primes.size();
  IntMatrix rows = rows_as_mpz(m);

  // Right kernel of R: U' R^T = H' leaves kernel vectors in the zero rows.
  Echelon rt = hermite_reduce(transpose(rows, p), rows.size());
  const std::size_t r = rt.rank;
  IntMatrix kernel_cols(p, std::vector<mpz_class>(p - r));
  for (std::size_t j = r; j < p; ++j)
    for (std::size_t i = 0; i < p; ++i) kernel_cols[i][j - r] = rt.transform[j][i];

  // Saturation of the row lattice = integer vectors orthogonal to that kernel.
  Echelon kc = hermite_reduce(kernel_cols, p - r);
  IntMatrix sat(kc.transform.begin() + static_cast<std::ptrdiff_t>(kc.rank), kc.transform.end());
  Echelon h = hermite_reduce(std::move(sat), p);

  Embedding e;
  e.free_rank = r;
  e.primes = m.primes;
  e.torsion = contains_minus_one(m);
  e.elements = m.elements;
  for (std::size_t i = 0; i < r; ++i) {
    Point b;
    b.reserve(p);
    for (const auto& v : h.form[i]) b.push_back(to_i64_checked(v));
    e.basis.push_back(std::move(b));
  }
  for (std::size_t k = 0; k < m.rows.size(); ++k) {
    std::vector<mpz_class> residual = rows[k];
    Point y(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      const std::size_t c = h.pivot_cols[i];
      mpz_class q, rem;
      mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), residual[c].get_mpz_t(), h.form[i][c].get_mpz_t());
      if (rem != 0) fail(ErrorCode::Overflow, "exponent row outside the saturated lattice");
      for (std::size_t j = 0; j < p; ++j) residual[j] -= q * h.form[i][j];
      y[i] = to_i64_checked(q);
    }
    for (const auto& v : residual)
      if (v != 0) fail(ErrorCode::Overflow, "exponent row outside the saturated lattice");
    e.coords.push_back({m.signs[k], std::move(y)});
  }
  return e;
}

std::size_t coordinate_bounded_sum_count(const Embedding& e, std::size_t h, const Budget& budget,
                                         std::size_t stop_at, bool* partial) {
  if (partial) *partial = false;
  // Distinct sums of nu(a_i) are distinct products of the a_i, so any
  // faithful coordinates will do; prime exponents are the sparsest.
  ExponentMatrix em = exponent_matrix(FiniteSet::from_sorted_unique(e.elements));
  using Vec = std::vector<std::int64_t>;
  std::vector<Vec> items;
  for (std::size_t i = 0; i < em.rows.size(); ++i) {
    Vec v{em.signs[i]};
    v.insert(v.end(), em.rows[i].begin(), em.rows[i].end());
    if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; }))
      items.push_back(std::move(v));
  }
  // An element owning a prime no other element uses has its multiplicity
  // read off from that coordinate: it contributes a factor h+1 exactly.
  std::size_t factor = 1;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t col = 1; col < em.primes.size() + 1 && !again; ++col) {
      std::size_t owner = items.size(), users = 0;
      for (std::size_t i = 0; i < items.size(); ++i)
        if (items[i][col] != 0) owner = i, ++users;
      if (users != 1) continue;
      if (factor > std::numeric_limits<std::size_t>::max() / (h + 1))
        fail(ErrorCode::Overflow, "coordinate sum count exceeds 64 bits");
      factor *= h + 1;
      items.erase(items.begin() + static_cast<std::ptrdiff_t>(owner));
      again = true;
    }
  }
  auto add = [](Vec x, const Vec& y) {
    x[0] = (x[0] + y[0]) & 1;
    for (std::size_t j = 1; j < x.size(); ++j) x[j] += y[j];
    return x;
  };
  const std::size_t rest_stop = stop_at ? (stop_at + factor - 1) / factor : 0;
  const std::size_t rest =
      detail::incremental_bounded_sums(items, static_cast<std::int64_t>(h),
                                       Vec(em.primes.size() + 1, 0), add, budget,
                                       "coordinate sums", rest_stop, partial)
          .size();
  if (rest > std::numeric_limits<std::size_t>::max() / factor)
    fail(ErrorCode::Overflow, "coordinate sum count exceeds 64 bits");
  return rest * factor;
}

}  // namespace sumprod
