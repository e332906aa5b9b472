#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "subcycle/errors.hpp"

namespace subcycle {

/// Comparison tolerance for real-valued oracle costs.
inline constexpr double kCostTolerance = 1e-9;

/// An oracle value: exact 64-bit arithmetic for integer-valued oracles,
/// double precision otherwise. Integer and real costs never mix within one
/// oracle; mixed comparisons fall back to the double view.
class Cost {
 public:
  Cost() = default;  // integer zero

  static Cost integer(long long v) {
    Cost c;
    c.integral_ = true;
    c.ivalue_ = v;
    return c;
  }

  static Cost real(double v) {
    Cost c;
    c.integral_ = false;
    c.rvalue_ = v;
    return c;
  }

  bool integral() const { return integral_; }

  long long ival() const {
    if (!integral_) throw InternalError("ival() on a real cost");
    return ivalue_;
  }

  double value() const {
    return integral_ ? static_cast<double>(ivalue_) : rvalue_;
  }

  /// this - o, clamped at zero for real values to absorb rounding.
  /// Integer subtraction is exact and left untouched.
  Cost minus_clamped(const Cost& o) const {
    if (integral_ && o.integral_) return integer(ivalue_ - o.ivalue_);
    double d = value() - o.value();
    return real(d < 0.0 ? 0.0 : d);
  }

  Cost plus(const Cost& o) const {
    if (integral_ && o.integral_) return integer(ivalue_ + o.ivalue_);
    return real(value() + o.value());
  }

  bool less(const Cost& o) const {
    if (integral_ && o.integral_) return ivalue_ < o.ivalue_;
    return value() < o.value();
  }

  bool leq(const Cost& o) const {
    if (integral_ && o.integral_) return ivalue_ <= o.ivalue_;
    return value() <= o.value();
  }

  bool positive(double tau = kCostTolerance) const {
    if (integral_) return ivalue_ > 0;
    return rvalue_ > tau;
  }

  bool same_value(const Cost& o, double tau = kCostTolerance) const {
    if (integral_ && o.integral_) return ivalue_ == o.ivalue_;
    return std::fabs(value() - o.value()) <= tau;
  }

  std::string str() const {
    if (integral_) return std::to_string(ivalue_);
    std::ostringstream os;
    os.precision(17);
    os << rvalue_;
    return os.str();
  }

 private:
  long long ivalue_ = 0;
  double rvalue_ = 0.0;
  bool integral_ = true;
};

}  // namespace subcycle
