#include "sumprod/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "sumprod/error.hpp"

namespace sumprod {

LatticeSet::LatticeSet(std::vector<Point> points) : points_(std::move(points)) {
  for (const auto& p : points_)
    if (p.size() != points_.front().size())
      fail(ErrorCode::DimensionMismatch, "lattice points of different dimensions");
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

LatticeSet lattice_sumset(const LatticeSet& x, const LatticeSet& y, const Budget& budget) {
  if (x.empty() || y.empty()) return {};
  if (x.dim() != y.dim())
    fail(ErrorCode::DimensionMismatch, "lattice_sumset of dimensions " + std::to_string(x.dim()) +
                                           " and " + std::to_string(y.dim()));
  charge(budget, static_cast<double>(x.size()) * static_cast<double>(y.size()), "lattice_sumset");
  std::vector<Point> out;
  out.reserve(x.size() * y.size());
  for (const auto& p : x) {
    for (const auto& q : y) {
      Point s(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) s[i] = p[i] + q[i];
      out.push_back(std::move(s));
    }
  }
  return LatticeSet(std::move(out));
}

std::size_t affine_dim(const LatticeSet& s) {
  if (s.empty()) fail(ErrorCode::EmptySet, "affine_dim of an empty set");
  const Point& p0 = s.points().front();
  IntMatrix diffs;
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::vector<mpz_class> row;
    row.reserve(p0.size());
    for (std::size_t j = 0; j < p0.size(); ++j)
      row.emplace_back(static_cast<long>(s.points()[i][j] - p0[j]));
    diffs.push_back(std::move(row));
  }
  return hermite_reduce(std::move(diffs), p0.size()).rank;
}

LatticeSet parse_lattice_set(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Point p;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(field, &used);
        if (field.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument("");
        p.push_back(v);
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad coordinate '" + field + "'");
      }
    }
    if (!pts.empty() && pts.front().size() != p.size())
      fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": dimension mismatch");
    pts.push_back(std::move(p));
  }
  return LatticeSet(std::move(pts));
}

LatticeSet read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open lattice file '" + path + "'");
  return parse_lattice_set(in);
}

std::string to_string(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

void write_lattice_set(std::ostream& out, const LatticeSet& s) {
  for (const auto& p : s) out << to_string(p) << '\n';
}

IntMatrix transpose(const IntMatrix& m, std::size_t cols) {
  IntMatrix t(cols, std::vector<mpz_class>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

namespace {

void row_axpy(std::vector<mpz_class>& dst, const mpz_class& q, const std::vector<mpz_class>& src) {
  for (std::size_t j = 0; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] -= q * src[j];
}

}  // namespace

Echelon hermite_reduce(IntMatrix m, std::size_t cols) {
  const std::size_t n = m.size();
  Echelon e;
  e.transform.assign(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) e.transform[i][i] = 1;
  auto& u = e.transform;

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < n; ++c) {
    bool has_pivot = false;
    for (;;) {
      std::size_t best = n;
      for (std::size_t i = r; i < n; ++i)
        if (m[i][c] != 0 && (best == n || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == n) break;
      has_pivot = true;
      std::swap(m[r], m[best]);
      std::swap(u[r], u[best]);
      bool cleared = true;
      for (std::size_t i = r + 1; i < n; ++i) {
        if (m[i][c] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
        row_axpy(m[i], q, m[r]);
        row_axpy(u[i], q, u[r]);
        if (m[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (!has_pivot) continue;
    if (m[r][c] < 0) {
      for (auto& x : m[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q == 0) continue;
      row_axpy(m[i], q, m[r]);
      row_axpy(u[i], q, u[r]);
    }
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.rank = r;
  e.form = std::move(m);
  return e;
}

}  // namespace sumprod
