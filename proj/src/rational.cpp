#include "sumprod/rational.hpp"

#include <cctype>
#include <cmath>

#include "sumprod/error.hpp"

namespace sumprod {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IOError";
    case ErrorCode::EmptyStarSet: return "EmptyStarSet";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnknownClaim: return "UnknownClaim";
    case ErrorCode::MissingParam: return "MissingParam";
    case ErrorCode::PremiseViolated: return "PremiseViolated";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

Rational Rational::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of 0");
  return Rational(mpq_class(1 / q_));
}

Rational Rational::parse(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view s = text.substr(b, e - b);

  auto bad = [&]() -> Rational {
    fail(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && s[i] == '-') {
    negative = true;
    ++i;
  }
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  std::size_t num_end = digits(i);
  if (num_end == i) return bad();
  mpz_class num(std::string(s.substr(i, num_end - i)), 10);
  mpz_class den = 1;
  if (num_end < s.size()) {
    if (s[num_end] != '/') return bad();
    std::size_t den_end = digits(num_end + 1);
    if (den_end == num_end + 1 || den_end != s.size()) return bad();
    den = mpz_class(std::string(s.substr(num_end + 1, den_end - num_end - 1)), 10);
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  if (negative) num = -num;
  return Rational(num, den);
}

std::string Rational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string to_string(const mpz_class& x) { return x.get_str(); }

double log_abs(const mpz_class& x) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const mpq_class& q) {
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

}  // namespace sumprod

std::size_t std::hash<sumprod::Rational>::operator()(
    const sumprod::Rational& r) const noexcept {
  std::size_t h1 = mpz_get_ui(r.num().get_mpz_t()) ^ (r.sign() < 0 ? 0x9e3779b97f4a7c15ULL : 0);
  std::size_t h2 = mpz_get_ui(r.den().get_mpz_t());
  return h1 * 1000003u ^ h2;
}
