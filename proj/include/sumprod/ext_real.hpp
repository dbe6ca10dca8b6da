#pragma once

#include <optional>
#include <string>

namespace sumprod {

/// Real number with an unbounded exponent: stored as sign and ln|x|.
///
/// Values such as h^{65h} or t^{12t}(m+1) overflow double long before they
/// become interesting; an ExtReal keeps ~15 significant digits at any scale.
class ExtReal {
 public:
  ExtReal() = default;
  static ExtReal from_double(double x);
  /// e^l.
  static ExtReal exp(double l);
  /// e^x for an extended-range x (x itself may be astronomically large).
  static ExtReal exp(const ExtReal& x);
  static ExtReal zero() { return {}; }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  /// ln|x|; -inf for zero.
  double log_abs() const;
  /// ln x for x > 0, as an ExtReal.
  ExtReal log() const;

  /// Nullopt when |x| is outside the double range.
  std::optional<double> to_double() const;
  /// Saturates to +-inf.
  double to_double_saturating() const;
  /// Scientific notation with `digits` significant digits, any exponent.
  std::string to_string(int digits = 17) const;

  ExtReal operator-() const {
    ExtReal r = *this;
    r.sign_ = -r.sign_;
    return r;
  }
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);

  /// -1, 0, +1.
  friend int compare(const ExtReal& a, const ExtReal& b);
  friend bool operator<(const ExtReal& a, const ExtReal& b) { return compare(a, b) < 0; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return compare(a, b) > 0; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return compare(a, b) >= 0; }
  friend bool operator==(const ExtReal& a, const ExtReal& b) { return compare(a, b) == 0; }

  ExtReal abs() const {
    ExtReal r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

 private:
  int sign_ = 0;
  double lnmag_ = 0;
};

/// ln(e^a + e^b) for log-domain values a, b that may themselves be huge.
ExtReal log_add(const ExtReal& a, const ExtReal& b);

}  // namespace sumprod
