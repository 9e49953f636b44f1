// ccopt -- composite cardinality optimization toolkit
// Copyright 2026 ccopt contributors
// Licensed under Apache 2.0

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ccopt {

// Extended-real value: a double that may be +inf (point outside a domain)
// or -inf (unbounded program). +inf absorbs addition; inf - inf is a
// program error and throws instead of producing NaN.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v)) throw std::logic_error("ExtReal: NaN");
  }

  static ExtReal inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  bool finite() const { return std::isfinite(v_); }
  bool is_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }
  double value() const { return v_; }

  ExtReal operator+(const ExtReal& o) const {
    if ((is_inf() && o.is_neg_inf()) || (is_neg_inf() && o.is_inf()))
      throw std::logic_error("ExtReal: inf - inf");
    if (is_inf() || o.is_inf()) return inf();
    if (is_neg_inf() || o.is_neg_inf()) return neg_inf();
    return ExtReal(v_ + o.v_);
  }
  ExtReal& operator+=(const ExtReal& o) { return *this = *this + o; }
  ExtReal operator-() const { return ExtReal(-v_); }

  friend bool operator<(const ExtReal& a, const ExtReal& b) { return a.v_ < b.v_; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return a.v_ > b.v_; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return a.v_ >= b.v_; }
  friend bool operator==(const ExtReal& a, const ExtReal& b) { return a.v_ == b.v_; }

 private:
  double v_ = 0.0;
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }

}  // namespace ccopt
