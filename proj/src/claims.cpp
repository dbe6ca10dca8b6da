#include "sumprod/claims.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "sumprod/counting.hpp"
#include "sumprod/multdim.hpp"
#include "sumprod/setalg.hpp"

namespace sumprod {

std::size_t gamma0(std::size_t t) { return t / 2; }

std::size_t gamma1(std::size_t t) {
  if (t % 2 == 1) return t / 2;
  if (t < 2) fail(ErrorCode::InvalidArgument, "gamma1 needs t >= 2");
  return t / 2 - 1;
}

ExtReal log_D(std::size_t t, std::size_t m) {
  if (t == 0) fail(ErrorCode::InvalidArgument, "log_D needs t >= 1");
  const double td = static_cast<double>(t);
  return ExtReal::exp(12 * td * std::log(td)) * ExtReal::from_double(static_cast<double>(m + 1));
}

std::string_view to_string(Mode m) { return m == Mode::Assert ? "assert" : "report"; }

namespace {

enum class Dir { Geq, Leq, Lt, Eq };

constexpr double kLogTolerance = 1e-9;

ExtReal ln(const mpq_class& q) { return ExtReal::from_double(log_abs(q)); }
ExtReal ln(double x) { return ExtReal::from_double(std::log(x)); }
ExtReal real(double x) { return ExtReal::from_double(x); }

std::string str(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

mpq_class q_of(std::size_t n) { return mpq_class(static_cast<unsigned long>(n)); }

mpz_class zpow(std::size_t base, std::size_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

mpq_class qpow(const mpq_class& b, std::size_t e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), e);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

void set_exact(Verdict& v, const mpq_class& lhs, const mpq_class& rhs, Dir dir) {
  v.lhs_exact = str(lhs);
  v.rhs_exact = str(rhs);
  if (sgn(lhs) > 0) v.lhs_log = ln(lhs);
  if (sgn(rhs) > 0) v.rhs_log = ln(rhs);
  const int c = cmp(lhs, rhs);
  switch (dir) {
    case Dir::Geq: v.holds = c >= 0; break;
    case Dir::Leq: v.holds = c <= 0; break;
    case Dir::Lt: v.holds = c < 0; break;
    case Dir::Eq: v.holds = c == 0; break;
  }
  if (v.lhs_log && v.rhs_log) {
    ExtReal diff = *v.lhs_log - *v.rhs_log;
    if (c == 0) diff = ExtReal::zero();
    v.slack_log = (dir == Dir::Leq || dir == Dir::Lt) ? -diff : diff;
  }
}

void set_log(Verdict& v, const ExtReal& lhs_log, const ExtReal& rhs_log, Dir dir) {
  v.lhs_log = lhs_log;
  v.rhs_log = rhs_log;
  ExtReal diff = lhs_log - rhs_log;
  ExtReal slack = (dir == Dir::Leq || dir == Dir::Lt) ? -diff : diff;
  v.slack_log = slack;
  ExtReal scale = real(1.0);
  if (lhs_log.abs() > scale) scale = lhs_log.abs();
  if (rhs_log.abs() > scale) scale = rhs_log.abs();
  const ExtReal tol = scale * real(kLogTolerance);
  switch (dir) {
    case Dir::Geq:
    case Dir::Leq: v.holds = slack >= -tol; break;
    case Dir::Lt: v.holds = slack > tol; break;
    case Dir::Eq: v.holds = slack.abs() <= tol; break;
  }
}

[[noreturn]] void premise(const std::string& what) { fail(ErrorCode::PremiseViolated, what); }

const FiniteSet& need_nonempty(const FiniteSet& s, const char* name) {
  if (s.empty()) fail(ErrorCode::InvalidArgument, std::string(name) + " must be nonempty");
  return s;
}

Json set_json(const FiniteSet& s) {
  Json arr = Json::array();
  for (const auto& x : s) arr.push_back(x.to_string());
  return arr;
}

Json lattice_json(const LatticeSet& s) {
  Json arr = Json::array();
  for (const auto& p : s) arr.push_back(p);
  return arr;
}

// ---------------------------------------------------------------------------
// Claims

using ClaimFn = std::function<void(const ClaimInstance&, const Budget&, Verdict&)>;

void cs_iterated(const ClaimInstance& in, const Budget& b, Verdict& v) {
  const FiniteSet& a = need_nonempty(*in.a, "A");
  const std::size_t h = *in.h;
  if (h == 0) fail(ErrorCode::InvalidArgument, "h must be >= 1");
  const std::size_t size_ha = linear_combo(h, a, 0, {}, b).size();
  RepFunction rf = rep_function(h, a, 0, {}, b);
  const mpz_class m = rf.sum_of_squares();
  const mpz_class top = zpow(a.size(), 2 * h);
  set_exact(v, q_of(size_ha), mpq_class(top, m), Dir::Geq);
  v.details["energy"] = m.get_str();
  if (q_of(size_ha) * m == top) {
    // Cauchy-Schwarz is tight only for a constant representation function.
    const bool constant = std::all_of(rf.entries.begin(), rf.entries.end(), [&](const auto& e) {
      return e.second == rf.entries.front().second;
    });
    v.details["equality"] = true;
    v.details["rep_constant"] = constant;
    if (!constant) v.holds = false;
  }
}

void cs_distinct(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  const FiniteSet& b = *in.b;
  const std::size_t k = *in.k, l = *in.l;
  const std::size_t lhs = linear_combo(k, a, l, b, bud).size();
  const mpz_class m = mixed_tuples(k, a, l, b, bud);
  const mpz_class top = zpow(a.size(), 2 * k) * zpow(b.size(), 2 * l);
  set_exact(v, q_of(lhs), mpq_class(top, m), Dir::Geq);
  v.details["mixed_tuples"] = m.get_str();
}

void ruzsa_rn(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const LatticeSet* x = &*in.x;
  const LatticeSet* y = &*in.y;
  if (x->empty() || y->empty()) fail(ErrorCode::EmptySet, "X and Y must be nonempty");
  if (x->size() > y->size()) {
    std::swap(x, y);
    v.details["swapped"] = true;
  }
  LatticeSet s = lattice_sumset(*x, *y, bud);
  const std::size_t n = affine_dim(s);
  mpq_class rhs = q_of(y->size()) + q_of(n) * q_of(x->size()) - q_of(n * (n + 1) / 2);
  set_exact(v, q_of(s.size()), rhs, Dir::Geq);
  v.details["n"] = n;
}

void ab_lower(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet* a = &need_nonempty(*in.a, "A");
  const FiniteSet* b = &need_nonempty(*in.b, "B");
  if (a->contains_zero() || b->contains_zero()) premise("0 must not lie in A or B");
  if (a->size() > b->size()) {
    std::swap(a, b);
    v.details["swapped"] = true;
  }
  Embedding e = embed(set_union(*a, *b));
  if (e.torsion) premise("-1 lies in <(A u B)*>: no embedding into Z^r");
  LatticeSet xa = e.vector_image(*a), yb = e.vector_image(*b);
  LatticeSet s = lattice_sumset(xa, yb, bud);
  const std::size_t d = affine_dim(s);
  const std::size_t ab = productset(*a, *b, bud).size();
  mpq_class rhs = q_of(b->size()) + q_of(d) * q_of(a->size()) - q_of(d * (d + 1) / 2);
  set_exact(v, q_of(ab), rhs, Dir::Geq);
  v.details["d"] = d;
  v.details["embedded_sumset_size"] = s.size();
  if (s.size() != ab) {
    v.holds = false;
    v.details["embedding_mismatch"] = true;
  }
}

void plunnecke(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = need_nonempty(*in.a, "A");
  const FiniteSet& b = need_nonempty(*in.b, "B");
  const std::size_t n = *in.n, m = *in.m;
  if (n + m == 0) fail(ErrorCode::InvalidArgument, "n + m must be >= 1");
  const std::size_t ab = sumset(a, b, bud).size();
  mpq_class k(static_cast<unsigned long>(ab), static_cast<unsigned long>(a.size()));
  k.canonicalize();
  const std::size_t lhs = difference_combo(n, m, b, bud).size();
  set_exact(v, q_of(lhs), qpow(k, n + m) * q_of(a.size()), Dir::Leq);
  v.details["K"] = str(k);
}

void simple_sum_chain(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  const std::size_t h = *in.h;
  if (h == 0 || h > a.size()) fail(ErrorCode::InvalidArgument, "need 1 <= h <= |A|");
  RepFunction rf = rep_function(h, a, 0, {}, bud);
  FiniteSet aplus = subset_sums(a, bud);
  mpz_class covered = 0;
  std::size_t support = 0;
  for (const auto& [x, r] : rf.entries) {
    if (aplus.contains(x)) {
      covered += r;
      ++support;
    }
  }
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), a.size(), h);
  set_exact(v, mpq_class(binom), mpq_class(covered), Dir::Leq);
  v.details["hA_cap_Aplus"] = support;
}

void dilated_simple_sum(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  const std::size_t h = *in.h;
  if (h == 0) fail(ErrorCode::InvalidArgument, "h must be >= 1");
  if (a.contains_zero()) premise("0 must not lie in A");
  Embedding e = embed(a);
  if (e.torsion) premise("-1 lies in <A*>: coordinates are not in Z^m");
  const std::size_t m = mult_dim(e);
  const mpz_class rhs = zpow(h, m);
  // Exact up to 2^16 sums; past that and past h^m the partial count is a
  // lower bound, which still certifies the inequality.
  std::size_t stop = std::size_t{1} << 16;
  if (rhs.fits_ulong_p()) stop = std::max<std::size_t>(stop, rhs.get_ui());
  else stop = 0;
  bool partial = false;
  const std::size_t lhs = coordinate_bounded_sum_count(e, h, bud, stop, &partial);
  if (partial) v.details["lhs_lower_bound"] = true;
  set_exact(v, q_of(lhs), mpq_class(rhs), Dir::Geq);
  v.details["mult_dim"] = m;
}

void identity_15(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  if (a.contains_zero()) premise("0 must not lie in A");
  const std::size_t products = subset_products(a, bud).size();
  Embedding e = embed(a);
  const std::size_t coords = coordinate_bounded_sum_count(e, 1, bud);
  set_exact(v, q_of(products), q_of(coords), Dir::Eq);
  v.details["free_rank"] = e.free_rank;
  v.details["torsion"] = e.torsion;
}

void gamma_props(const ClaimInstance& in, const Budget&, Verdict& v) {
  const std::size_t kmax = *in.k, lmax = *in.l;
  std::size_t checks = 0, passed = 0;
  Json first_failure;
  auto record = [&](bool ok, const char* part, std::size_t k, std::size_t l) {
    ++checks;
    if (ok) {
      ++passed;
    } else if (first_failure.is_null()) {
      first_failure = Json{{"part", part}, {"k", k}, {"l", l}};
    }
  };
  for (std::size_t k = 1; k <= kmax; ++k) {
    for (std::size_t l = 1; l <= lmax; ++l) {
      if (k + l <= 2) continue;
      const auto g0 = [](std::size_t t) { return static_cast<long>(gamma0(t)); };
      const auto g1 = [](std::size_t t) { return static_cast<long>(gamma1(t)); };
      record(g1(k + l - 1) == g0(k + l) - 1, "a", k, l);
      if (k >= 2 && l >= 2 && !(k % 2 == 1 && l % 2 == 1))
        record(g1(k + l - 1) == g0(k) + g0(l) - 1, "b", k, l);
      if (l >= 2) record(g0(k) + g1(l) <= g1(k + l), "c", k, l);
    }
  }
  set_exact(v, q_of(passed), q_of(checks), Dir::Eq);
  if (!first_failure.is_null()) v.details["first_failure"] = first_failure;
}

void multdim_ratio(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  FiniteSet star = in.a->without_zero();
  const std::size_t m = mult_dim(*in.a);
  const std::size_t sq = productset(star, star, bud).size();
  set_exact(v, q_of(m),
            mpq_class(static_cast<unsigned long>(sq), static_cast<unsigned long>(star.size())),
            Dir::Leq);
  v.details["product_set_size"] = sq;
}

struct PairStats {
  mpq_class c;      // |B|/|A|
  mpq_class alpha;  // |AB|/|A| unless given
  std::size_t ab = 0;
};

PairStats pair_stats(const ClaimInstance& in, const Budget& bud) {
  const FiniteSet& a = need_nonempty(*in.a, "A");
  const FiniteSet& b = need_nonempty(*in.b, "B");
  PairStats s;
  s.ab = productset(a, b, bud).size();
  s.c = mpq_class(static_cast<unsigned long>(b.size()), static_cast<unsigned long>(a.size()));
  s.c.canonicalize();
  if (in.alpha) {
    s.alpha = in.alpha->mpq();
    if (!(q_of(s.ab) < s.alpha * q_of(a.size())))
      premise("|AB| < alpha |A| fails for the given alpha");
  } else {
    s.alpha = mpq_class(static_cast<unsigned long>(s.ab), static_cast<unsigned long>(a.size()));
    s.alpha.canonicalize();
  }
  return s;
}

void multdim_ab(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = need_nonempty(*in.a, "A");
  const FiniteSet& b = need_nonempty(*in.b, "B");
  if (a.contains_zero() || b.contains_zero()) premise("0 must not lie in A or B");
  PairStats st = pair_stats(in, bud);
  Embedding e = embed(set_union(a, b));
  if (e.torsion) premise("-1 lies in <(A u B)*>: no embedding into Z^r");
  const std::size_t d = affine_dim(lattice_sumset(e.vector_image(a), e.vector_image(b), bud));
  const std::size_t dim_a = mult_dim(a), dim_b = mult_dim(b);
  const std::size_t m = std::max(dim_a, dim_b);
  mpq_class kp;
  if (in.k_param) {
    kp = in.k_param->mpq();
    if (q_of(a.size() + b.size()) < kp * q_of(d + 2)) premise("|A| + |B| >= K (d + 2) fails");
  } else {
    kp = mpq_class(static_cast<unsigned long>(a.size() + b.size()), static_cast<unsigned long>(d + 2));
    kp.canonicalize();
  }
  if (kp < 1) premise("K must be >= 1");
  v.details["d"] = d;
  v.details["dim_A"] = dim_a;
  v.details["dim_B"] = dim_b;
  v.details["max_dim"] = m;
  v.details["K"] = str(kp);
  v.details["C"] = str(st.c);
  v.details["alpha"] = str(st.alpha);
  v.details["d_ge_max_dim"] = d >= m;
  mpq_class bound;
  if (st.c >= 1) {
    if (!(kp > st.c)) premise("case (a) needs K > C >= 1");
    bound = (st.alpha - st.c) / (1 - st.c / kp);
    v.details["case"] = "a";
  } else {
    if (!(kp > 1)) premise("case (b) needs K > 1");
    bound = (st.alpha - 1) / (st.c * (1 - 1 / kp));
    v.details["case"] = "b";
  }
  set_exact(v, q_of(m), bound, Dir::Lt);
}

void bases_productset(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const LatticeSet& x = *in.x;
  const LatticeSet& y = *in.y;
  if (x.empty() || y.empty()) fail(ErrorCode::EmptySet, "X and Y must be nonempty");
  LatticeSet s = lattice_sumset(x, y, bud);
  const std::size_t d = affine_dim(s);
  const double lx = std::log(static_cast<double>(x.size()));
  const double c = static_cast<double>(y.size()) / static_cast<double>(x.size());
  const double kk = static_cast<double>(x.size() + y.size()) / static_cast<double>(d + 2);
  const bool large_d = in.assume_large_d.value_or(false);
  Json prem;
  prem["C_le_log_X"] = c <= lx;
  prem["K_le_log_X"] = kk <= lx;
  prem["Y_ge_X"] = y.size() >= x.size();
  prem["d_large_assumed"] = large_d;
  const bool ok = c <= lx && kk <= lx && y.size() >= x.size() && large_d;
  v.details["premises"] = prem;
  v.details["premises_hold"] = ok;
  v.details["d"] = d;
  if (x.size() < 2) premise("|X| >= 2 needed for log |X| > 0");
  ExtReal rhs = ln(static_cast<double>(x.size())) + ln(static_cast<double>(y.size())) -
                ln(1024.0) - real(2 * std::log(lx));
  set_log(v, ln(static_cast<double>(s.size())), rhs, Dir::Geq);
  v.lhs_exact = std::to_string(s.size());
}

void thm_sumprod(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = need_nonempty(*in.a, "A");
  const std::size_t h = *in.h;
  if (h < 2) fail(ErrorCode::InvalidArgument, "h must be >= 2");
  const std::size_t sq = productset(a, a, bud).size();
  mpq_class alpha;
  if (in.alpha) {
    alpha = in.alpha->mpq();
    if (q_of(sq) > alpha * q_of(a.size())) premise("|A^2| <= alpha |A| fails for the given alpha");
  } else {
    alpha = mpq_class(static_cast<unsigned long>(sq), static_cast<unsigned long>(a.size()));
    alpha.canonicalize();
  }
  const std::size_t lhs = linear_combo(h, a, 0, {}, bud).size();
  const double hd = static_cast<double>(h);
  ExtReal tower = ExtReal::exp(65 * hd * std::log(hd)) * real(alpha.get_d() + 1);
  ExtReal rhs = -tower + real(hd * std::log(static_cast<double>(a.size())));
  set_log(v, ln(static_cast<double>(lhs)), rhs, Dir::Geq);
  v.lhs_exact = std::to_string(lhs);
  v.details["alpha"] = str(alpha);
}

void thm_sumproddiff(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  const FiniteSet& b = *in.b;
  const std::size_t k = *in.k, l = *in.l;
  PairStats st = pair_stats(in, bud);
  mpq_class worst = std::max({st.alpha, st.c, mpq_class(st.alpha / st.c)});
  const double t = static_cast<double>(k + l);
  const double la = std::log(static_cast<double>(a.size()));
  bool premise_ok = false;
  std::optional<ExtReal> premise_rhs_log;
  if (la > 0) {
    premise_rhs_log = real(-65 * t * std::log(t) + std::log(la));
    premise_ok = ln(worst) <= *premise_rhs_log;
  }
  const std::size_t lhs = linear_combo(k, a, l, b, bud).size();
  const mpz_class rhs = zpow(a.size(), k) * zpow(b.size(), l);
  set_exact(v, q_of(lhs), mpq_class(rhs), Dir::Geq);
  v.details["premise_holds"] = premise_ok;
  v.details["premise_max"] = str(worst);
  v.details["premise_rhs_log"] = premise_rhs_log ? Json(premise_rhs_log->to_string()) : Json();
  v.details["alpha"] = str(st.alpha);
  v.details["C"] = str(st.c);
  v.details["ratio"] = str(mpq_class(q_of(lhs) / mpq_class(rhs)));
}

void sigma_bounds(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = need_nonempty(*in.a, "A");
  const FiniteSet& b = need_nonempty(*in.b, "B");
  const std::size_t k = *in.k, l = *in.l;
  const std::size_t t = k + l;
  if (t < 2) fail(ErrorCode::InvalidArgument, "k + l must be >= 2");
  const std::size_t m = std::max(mult_dim(a), mult_dim(b));
  const mpz_class s0 = sigma_count(0, k, a, l, b, bud);
  const mpz_class s1 = sigma_count(1, k, a, l, b, bud);

  const double c = static_cast<double>(b.size()) / static_cast<double>(a.size());
  const double la = std::log(static_cast<double>(a.size()));
  const ExtReal c_part = real(static_cast<double>(l / 2) * std::log(c));
  const ExtReal lnd = log_D(t, m);
  auto pw = [&](long e) { return real(static_cast<double>(e) * la); };
  const long g0 = static_cast<long>(gamma0(t)), g1 = static_cast<long>(gamma1(t));
  ExtReal mu0, mu1;
  if (t % 2 == 1) {
    mu0 = c_part + lnd + pw(g0);
    mu1 = log_add(c_part + pw(g1), c_part + lnd + pw(g1 - 1));
  } else {
    mu0 = log_add(c_part + pw(g0), c_part + lnd + pw(g0 - 1));
    mu1 = c_part + lnd + pw(g1);
  }
  auto side = [&](const mpz_class& s, const ExtReal& mu) {
    Verdict part;
    if (s == 0) {
      part.holds = true;
      part.rhs_log = mu;
    } else {
      set_log(part, ln(mpq_class(s)), mu, Dir::Leq);
    }
    part.lhs_exact = s.get_str();
    return part;
  };
  Verdict p0 = side(s0, mu0), p1 = side(s1, mu1);
  auto slack_or_inf = [](const Verdict& p) {
    return p.slack_log ? *p.slack_log : ExtReal::exp(1e300);
  };
  const bool use1 = slack_or_inf(p1) < slack_or_inf(p0);
  const Verdict& bind = use1 ? p1 : p0;
  v.lhs_log = bind.lhs_log;
  v.rhs_log = bind.rhs_log;
  v.lhs_exact = bind.lhs_exact;
  v.slack_log = bind.slack_log;
  v.holds = p0.holds && p1.holds;
  v.details["binding"] = use1 ? "sigma1" : "sigma0";
  v.details["sigma0"] = s0.get_str();
  v.details["sigma1"] = s1.get_str();
  v.details["log_mu0"] = mu0.to_string();
  v.details["log_mu1"] = mu1.to_string();
  v.details["m"] = m;
  auto symmetric = [](const FiniteSet& s) {
    return std::all_of(s.begin(), s.end(), [&](const Rational& x) { return s.contains(-x); });
  };
  v.details["premises_hold"] =
      symmetric(a) && symmetric(b) && !a.contains_zero() && !b.contains_zero();
}

void addtuples_bound(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  const FiniteSet& b = *in.b;
  const std::size_t k = *in.k, l = *in.l;
  if (k + l == 0) fail(ErrorCode::InvalidArgument, "k + l must be >= 1");
  PairStats st = pair_stats(in, bud);
  const mpz_class m = mixed_tuples(k, a, l, b, bud);
  const double t = static_cast<double>(k + l);
  const mpq_class factor = st.c >= 1 ? st.alpha : mpq_class(st.alpha / st.c);
  ExtReal expo = ExtReal::exp(65 * t * std::log(t)) * real(factor.get_d());
  const double la = std::log(static_cast<double>(a.size()));
  const double lb = std::log(static_cast<double>(b.size()));
  const double kd = static_cast<double>(k), ld = static_cast<double>(l);
  ExtReal rhs = log_add(real(kd * la + ld * lb), expo + real((kd - 1) * la + ld * lb));
  set_log(v, ln(mpq_class(m)), rhs, Dir::Leq);
  v.lhs_exact = m.get_str();
  v.details["branch"] = st.c >= 1 ? "C>=1" : "C<1";
  v.details["alpha"] = str(st.alpha);
  v.details["C"] = str(st.c);
}

void gk_lower(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  const std::size_t n = a.size();
  const double eps = in.epsilon ? in.epsilon->to_double() : 0.0;
  if (n < 16) premise("needs N >= 16 so that lnlnln N > 0");
  GProxy g = g_proxy(a, bud);
  const double ln_n = std::log(static_cast<double>(n));
  const double expo = (1.0 / 264 - eps) * std::log(ln_n) / std::log(std::log(ln_n));
  set_log(v, ln(static_cast<double>(g.g)), real(expo * ln_n), Dir::Geq);
  v.lhs_exact = std::to_string(g.g);
  v.details["Aplus"] = g.aplus;
  v.details["Atimes"] = g.atimes;
  v.details["exponent"] = expo;
  v.details["log_base"] = "natural";
}

void ess_bound_value(const ClaimInstance& in, const Budget& bud, Verdict& v) {
  const FiniteSet& a = *in.a;
  const std::size_t d = *in.n;
  if (d == 0) fail(ErrorCode::InvalidArgument, "n (number of variables) must be >= 1");
  const std::size_t r = d * mult_dim(a);
  std::vector<Rational> coeffs(d, Rational(1));
  std::vector<FiniteSet> domains(d, a);
  SolutionCounts sc = nondegenerate_count(coeffs, domains, Rational(1), bud);
  const double dd = static_cast<double>(d);
  ExtReal rhs = ExtReal::exp(3 * dd * std::log(6 * dd)) * real(static_cast<double>(r + 1));
  v.lhs_exact = sc.nondegenerate.get_str();
  if (sc.nondegenerate == 0) {
    v.rhs_log = rhs;
    v.holds = true;
  } else {
    set_log(v, ln(mpq_class(sc.nondegenerate)), rhs, Dir::Leq);
  }
  v.details["nondegenerate"] = sc.nondegenerate.get_str();
  v.details["total"] = sc.total.get_str();
  v.details["rank"] = r;
  v.details["log_bound"] = rhs.to_string();
}

struct Entry {
  ClaimInfo info;
  ClaimFn fn;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {{"cs_iterated", Mode::Assert, {"A", "h"}, {}, "|hA| >= |A|^{2h} / E_h(A)"}, cs_iterated},
      {{"cs_distinct", Mode::Assert, {"A", "B", "k", "l"}, {}, "|kA+lB| >= |A|^{2k}|B|^{2l} / M"},
       cs_distinct},
      {{"ruzsa_rn", Mode::Assert, {"X", "Y"}, {}, "|X+Y| >= |Y| + n|X| - n(n+1)/2"}, ruzsa_rn},
      {{"ab_lower", Mode::Assert, {"A", "B"}, {}, "|AB| >= |B| + d|A| - d(d+1)/2"}, ab_lower},
      {{"plunnecke", Mode::Assert, {"A", "B", "n", "m"}, {}, "|nB-mB| <= K^{n+m}|A|"}, plunnecke},
      {{"simple_sum_chain", Mode::Assert, {"A", "h"}, {}, "C(|A|,h) <= sum_{hA cap A+} r_hA"},
       simple_sum_chain},
      {{"dilated_simple_sum", Mode::Assert, {"A", "h"}, {}, "|nu(A)+[h]| >= h^{dim A}"},
       dilated_simple_sum},
      {{"identity_15", Mode::Assert, {"A"}, {}, "|A^x| = |nu(A)+|"}, identity_15},
      {{"gamma_props", Mode::Assert, {"k", "l"}, {}, "additivity of gamma_0, gamma_1"},
       gamma_props},
      {{"multdim_ratio", Mode::Report, {"A"}, {}, "dim A <= |(A*)^2| / |A*|"}, multdim_ratio},
      {{"multdim_ab", Mode::Report, {"A", "B"}, {"K", "alpha"},
        "max(dim A, dim B) < (alpha - C)/(1 - C/K), or (alpha - 1)/(C(1 - 1/K)) if C < 1"},
       multdim_ab},
      {{"bases_productset", Mode::Report, {"X", "Y"}, {"assume_large_d"},
        "|X+Y| >= |X||Y| / (2^10 ln^2 |X|)"},
       bases_productset},
      {{"thm_sumprod", Mode::Assert, {"A", "h"}, {"alpha"}, "|hA| >= exp(-h^{65h}(alpha+1)) |A|^h"},
       thm_sumprod},
      {{"thm_sumproddiff", Mode::Report, {"A", "B", "k", "l"}, {"alpha"},
        "|kA+lB| >> |A|^k|B|^l under the premise"},
       thm_sumproddiff},
      {{"sigma_bounds", Mode::Report, {"A", "B", "k", "l"}, {}, "sigma_i(k,l) <= mu_i(k+l)"},
       sigma_bounds},
      {{"addtuples_bound", Mode::Report, {"A", "B", "k", "l"}, {"alpha"},
        "M <= |A|^k|B|^l + exp((k+l)^{65(k+l)} alpha)|A|^{k-1}|B|^l"},
       addtuples_bound},
      {{"gK_lower", Mode::Report, {"A"}, {"epsilon"},
        "|A+| + |A^x| >= N^{(1/264-eps) lnln N / lnlnln N}"},
       gk_lower},
      {{"ess_bound_value", Mode::Report, {"A", "n"}, {}, "A(d,r) <= exp((6d)^{3d}(r+1))"},
       ess_bound_value},
  };
  return table;
}

const Entry* find_entry(std::string_view id) {
  for (const auto& e : entries())
    if (e.info.id == id) return &e;
  return nullptr;
}

}  // namespace

const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> infos = [] {
    std::vector<ClaimInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const ClaimInfo* find_claim(std::string_view id) {
  const Entry* e = find_entry(id);
  return e ? &e->info : nullptr;
}

std::vector<std::string> ClaimInstance::present() const {
  std::vector<std::string> p;
  if (a) p.emplace_back("A");
  if (b) p.emplace_back("B");
  if (x) p.emplace_back("X");
  if (y) p.emplace_back("Y");
  if (h) p.emplace_back("h");
  if (k) p.emplace_back("k");
  if (l) p.emplace_back("l");
  if (n) p.emplace_back("n");
  if (m) p.emplace_back("m");
  if (alpha) p.emplace_back("alpha");
  if (c_ratio) p.emplace_back("C");
  if (k_param) p.emplace_back("K");
  if (epsilon) p.emplace_back("epsilon");
  if (assume_large_d) p.emplace_back("assume_large_d");
  return p;
}

Json ClaimInstance::echo() const {
  Json j = Json::object();
  if (a) j["A"] = set_json(*a);
  if (b) j["B"] = set_json(*b);
  if (x) j["X"] = lattice_json(*x);
  if (y) j["Y"] = lattice_json(*y);
  if (h) j["h"] = *h;
  if (k) j["k"] = *k;
  if (l) j["l"] = *l;
  if (n) j["n"] = *n;
  if (m) j["m"] = *m;
  if (alpha) j["alpha"] = alpha->to_string();
  if (c_ratio) j["C"] = c_ratio->to_string();
  if (k_param) j["K"] = k_param->to_string();
  if (epsilon) j["epsilon"] = epsilon->to_string();
  if (assume_large_d) j["assume_large_d"] = *assume_large_d;
  return j;
}

Verdict verify(const ClaimInstance& inst, const Budget& budget) {
  const Entry* entry = find_entry(inst.claim_id);
  if (!entry) fail(ErrorCode::UnknownClaim, "unknown claim '" + inst.claim_id + "'");
  const ClaimInfo& info = entry->info;
  const auto present = inst.present();
  for (auto req : info.required)
    if (std::find(present.begin(), present.end(), req) == present.end())
      fail(ErrorCode::MissingParam, inst.claim_id + " requires parameter " + std::string(req));
  for (const auto& p : present) {
    const bool known =
        std::find(info.required.begin(), info.required.end(), p) != info.required.end() ||
        std::find(info.optional.begin(), info.optional.end(), p) != info.optional.end();
    if (!known) fail(ErrorCode::MissingParam, inst.claim_id + " does not take parameter " + p);
  }
  Verdict v;
  v.claim = inst.claim_id;
  v.mode = info.mode;
  v.params = inst.echo();
  const auto start = std::chrono::steady_clock::now();
  entry->fn(inst, budget, v);
  v.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return v;
}

Verdict verify_captured(const ClaimInstance& inst, const Budget& budget) {
  try {
    return verify(inst, budget);
  } catch (const Error& e) {
    Verdict v;
    v.claim = inst.claim_id;
    if (const ClaimInfo* info = find_claim(inst.claim_id)) v.mode = info->mode;
    v.params = inst.echo();
    v.holds = false;
    v.error = std::string(to_string(e.code())) + ": " + e.what();
    v.error_code = e.code();
    return v;
  }
}

namespace {

void put_log(Json& j, const char* key, const char* ext_key, const std::optional<ExtReal>& x) {
  if (!x) {
    j[key] = nullptr;
    return;
  }
  if (auto d = x->to_double(); d && std::isfinite(*d)) {
    j[key] = *d;
  } else {
    j[key] = nullptr;
    j[ext_key] = x->to_string();
  }
}

}  // namespace

Json to_json(const Verdict& v) {
  Json j;
  j["claim"] = v.claim;
  j["params"] = v.params;
  put_log(j, "lhs_log", "lhs_log_ext", v.lhs_log);
  put_log(j, "rhs_log", "rhs_log_ext", v.rhs_log);
  j["lhs_exact"] = v.lhs_exact ? Json(*v.lhs_exact) : Json();
  j["rhs_exact"] = v.rhs_exact ? Json(*v.rhs_exact) : Json();
  j["holds"] = v.holds;
  put_log(j, "slack_log", "slack_log_ext", v.slack_log);
  j["mode"] = to_string(v.mode);
  j["elapsed_ms"] = v.elapsed_ms;
  if (!v.details.empty()) j["details"] = v.details;
  if (v.error) j["error"] = *v.error;
  return j;
}

std::string csv_header() { return "claim,params,lhs,rhs,holds,slack_log,mode,elapsed_ms"; }

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string side_text(const std::optional<std::string>& exact, const std::optional<ExtReal>& log) {
  if (exact) return *exact;
  if (log) return "exp(" + log->to_string() + ")";
  return "";
}

}  // namespace

std::string to_csv(const Verdict& v) {
  std::ostringstream os;
  Json j = to_json(v);
  os << v.claim << ',' << csv_quote(v.params.dump()) << ','
     << csv_quote(side_text(v.lhs_exact, v.lhs_log)) << ','
     << csv_quote(side_text(v.rhs_exact, v.rhs_log)) << ',' << (v.holds ? "true" : "false") << ','
     << (v.slack_log ? v.slack_log->to_string() : "") << ',' << to_string(v.mode) << ','
     << j["elapsed_ms"].dump();
  return os.str();
}

}  // namespace sumprod
