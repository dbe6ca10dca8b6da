#include "sumprod/factor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "sumprod/error.hpp"

namespace sumprod {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

const std::vector<std::uint32_t>& small_primes(std::uint32_t limit) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(limit);
  if (it != cache.end()) return it->second;
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return cache.emplace(limit, std::move(primes)).first->second;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
u64 rho_u64(u64 n, u64& iterations_left) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1; c < 64; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
        if (iterations_left < m) return 0;
        iterations_left -= m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

mpz_class rho_mpz(const mpz_class& n, u64& iterations_left) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c < 64; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    while (d == 1) {
      if (iterations_left == 0) return 0;
      --iterations_left;
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
  return 0;
}

void split(const mpz_class& n, const FactorBudget& budget, u64& iters,
           std::map<mpz_class, long>& out) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    u64 v = n.get_ui();
    if (is_prime_u64(v)) {
      ++out[n];
      return;
    }
    u64 d = rho_u64(v, iters);
    if (d == 0) fail(ErrorCode::BudgetExceeded, "factorization budget exhausted on " + n.get_str());
    split(mpz_class(static_cast<unsigned long>(d)), budget, iters, out);
    split(mpz_class(static_cast<unsigned long>(v / d)), budget, iters, out);
    return;
  }
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  mpz_class d = rho_mpz(n, iters);
  if (d == 0) fail(ErrorCode::BudgetExceeded, "factorization budget exhausted on " + n.get_str());
  split(d, budget, iters, out);
  split(mpz_class(n / d), budget, iters, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all 64-bit n.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<PrimePower> factor_integer(const mpz_class& n_in, const FactorBudget& budget) {
  if (n_in <= 0) fail(ErrorCode::ZeroInput, "factor_integer needs a positive integer");
  std::vector<PrimePower> result;
  mpz_class n = n_in;
  for (std::uint32_t p : small_primes(budget.trial_limit)) {
    if (n == 1) break;
    if (mpz_cmp_ui(n.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) break;
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
    long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    result.push_back({mpz_class(p), e});
  }
  if (n == 1) return result;
  const std::uint64_t limit = budget.trial_limit;
  if (n <= mpz_class(static_cast<unsigned long>(limit)) * limit) {
    // No factor <= sqrt(n) survived trial division.
    result.push_back({n, 1});
    return result;
  }
  std::map<mpz_class, long> rest;
  u64 iters = budget.rho_iterations;
  split(n, budget, iters, rest);
  for (auto& [p, e] : rest) result.push_back({p, e});
  std::sort(result.begin(), result.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return result;
}

FactoredElement factor(const Rational& x, const FactorBudget& budget) {
  if (x.is_zero()) fail(ErrorCode::ZeroInput, "cannot factor 0");
  FactoredElement f;
  f.sign = x.sign();
  auto num = factor_integer(abs(x.num()), budget);
  auto den = factor_integer(x.den(), budget);
  for (auto& d : den) d.exponent = -d.exponent;
  // numerator and denominator are coprime, so merging never cancels
  f.factors.reserve(num.size() + den.size());
  std::merge(num.begin(), num.end(), den.begin(), den.end(), std::back_inserter(f.factors),
             [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return f;
}

Rational value(const FactoredElement& f) {
  mpz_class num = 1, den = 1;
  for (const auto& [p, e] : f.factors) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e > 0 ? e : -e));
    (e > 0 ? num : den) *= pe;
  }
  return Rational(f.sign < 0 ? mpz_class(-num) : num, den);
}

}  // namespace sumprod
