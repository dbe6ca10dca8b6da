#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "sumprod/rational.hpp"

namespace sumprod {

struct PrimePower {
  mpz_class prime;
  long exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// sign * prod prime^exponent. Primes strictly increasing, exponents nonzero.
struct FactoredElement {
  int sign = 1;
  std::vector<PrimePower> factors;

  friend bool operator==(const FactoredElement&, const FactoredElement&) = default;
};

struct FactorBudget {
  std::uint32_t trial_limit = 1'000'000;
  /// Pollard rho iterations allowed per composite cofactor.
  std::uint64_t rho_iterations = 1ULL << 26;
};

bool is_prime_u64(std::uint64_t n);
bool is_probable_prime(const mpz_class& n);

/// Complete factorization of n >= 1 as (prime, exponent) pairs in increasing
/// prime order. Throws BudgetExceeded when rho gives up.
std::vector<PrimePower> factor_integer(const mpz_class& n,
                                       const FactorBudget& budget = {});

/// Throws ZeroInput for x = 0.
FactoredElement factor(const Rational& x, const FactorBudget& budget = {});

Rational value(const FactoredElement& f);

}  // namespace sumprod
