#pragma once

/**
 * Exact rational numbers.
 *
 * A Rational is always kept in lowest terms with a positive denominator;
 * zero is 0/1. Arithmetic is delegated to GMP, which maintains the same
 * canonical form.
 */

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace sumprod {

class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : q_(n) {}   // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& n) : q_(n) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q);

  /// Parses `-?digits(/digits)?`, surrounding whitespace ignored.
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational inverse() const;

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ + b.q_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ - b.q_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ * b.q_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return a * b.inverse();
  }
  Rational& operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.q_ == b.q_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

  std::string to_string() const;
  double to_double() const { return q_.get_d(); }

 private:
  mpq_class q_{0};
};

// Free-function spellings of the arithmetic used by callers that prefer them.
inline Rational add(const Rational& a, const Rational& b) { return a + b; }
inline Rational mul(const Rational& a, const Rational& b) { return a * b; }
inline Rational neg(const Rational& a) { return -a; }
inline Rational inv(const Rational& a) { return a.inverse(); }
inline int compare(const Rational& a, const Rational& b) {
  return cmp(a.mpq(), b.mpq());
}

/// Natural logarithm of a positive big integer without overflowing double.
double log_abs(const mpz_class& x);
/// Natural logarithm of |q| for q != 0.
double log_abs(const mpq_class& q);

std::string to_string(const mpz_class& x);

}  // namespace sumprod

template <>
struct std::hash<sumprod::Rational> {
  std::size_t operator()(const sumprod::Rational& r) const noexcept;
};
