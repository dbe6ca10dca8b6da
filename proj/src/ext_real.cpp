#include "sumprod/ext_real.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace sumprod {
namespace {
constexpr double kLn10 = 2.302585092994045684;
constexpr double kMaxLn = 709.0;
}  // namespace

ExtReal ExtReal::from_double(double x) {
  ExtReal r;
  if (x == 0) return r;
  r.sign_ = x > 0 ? 1 : -1;
  r.lnmag_ = std::log(std::fabs(x));
  return r;
}

ExtReal ExtReal::exp(double l) {
  ExtReal r;
  r.sign_ = 1;
  r.lnmag_ = l;
  return r;
}

ExtReal ExtReal::exp(const ExtReal& x) {
  if (auto d = x.to_double()) return exp(*d);
  // |x| beyond double range: e^x is beyond any ExtReal too, clamp.
  ExtReal r;
  if (x.sign_ > 0) {
    r.sign_ = 1;
    r.lnmag_ = std::numeric_limits<double>::infinity();
  }
  return r;
}

double ExtReal::log_abs() const {
  return sign_ == 0 ? -std::numeric_limits<double>::infinity() : lnmag_;
}

ExtReal ExtReal::log() const { return from_double(lnmag_); }

std::optional<double> ExtReal::to_double() const {
  if (sign_ == 0) return 0.0;
  if (lnmag_ > kMaxLn) return std::nullopt;
  return sign_ * std::exp(lnmag_);
}

double ExtReal::to_double_saturating() const {
  if (auto d = to_double()) return *d;
  return sign_ * std::numeric_limits<double>::infinity();
}

std::string ExtReal::to_string(int digits) const {
  char buf[64];
  if (auto d = to_double()) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, *d);
    return buf;
  }
  const double log10 = lnmag_ / kLn10;
  double e10 = std::floor(log10);
  double mant = std::pow(10.0, log10 - e10);
  std::snprintf(buf, sizeof buf, "%s%.*fe+%.0f", sign_ < 0 ? "-" : "", digits - 1, mant, e10);
  return buf;
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  const ExtReal& big = a.lnmag_ >= b.lnmag_ ? a : b;
  const ExtReal& small = a.lnmag_ >= b.lnmag_ ? b : a;
  const double gap = small.lnmag_ - big.lnmag_;  // <= 0
  ExtReal r;
  if (a.sign_ == b.sign_) {
    r.sign_ = big.sign_;
    r.lnmag_ = big.lnmag_ + std::log1p(std::exp(gap));
    return r;
  }
  if (gap == 0) return r;
  r.sign_ = big.sign_;
  r.lnmag_ = big.lnmag_ + std::log1p(-std::exp(gap));
  return r;
}

ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  ExtReal r;
  if (a.sign_ == 0 || b.sign_ == 0) return r;
  r.sign_ = a.sign_ * b.sign_;
  r.lnmag_ = a.lnmag_ + b.lnmag_;
  return r;
}

int compare(const ExtReal& a, const ExtReal& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
  if (a.sign_ == 0 || a.lnmag_ == b.lnmag_) return 0;
  const bool larger_mag = a.lnmag_ > b.lnmag_;
  return (larger_mag == (a.sign_ > 0)) ? 1 : -1;
}

ExtReal log_add(const ExtReal& a, const ExtReal& b) {
  const ExtReal& hi = a >= b ? a : b;
  const ExtReal& lo = a >= b ? b : a;
  auto gap = (lo - hi).to_double();  // <= 0
  if (!gap || *gap < -745) return hi;
  return hi + ExtReal::from_double(std::log1p(std::exp(*gap)));
}

}  // namespace sumprod
