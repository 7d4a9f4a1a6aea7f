#pragma once

#include <cmath>

#include "alpha_luroth/rational.hpp"

namespace alpha_luroth {

/// A real result together with a guaranteed bound on its truncation error.
/// The true quantity lies in [value - radius, value + radius] up to the
/// rounding of the working type.
struct BoundedValue {
  double value = 0.0;
  double radius = 0.0;

  double lower() const { return value - radius; }
  double upper() const { return value + radius; }

  Sign sign() const {
    if (value - radius > 0.0) return Sign::positive;
    if (value + radius < 0.0) return Sign::negative;
    if (value == 0.0 && radius == 0.0) return Sign::zero;
    return Sign::unknown;
  }

  /// True when both values agree within their combined radii plus `slack`.
  friend bool agrees(const BoundedValue& a, const BoundedValue& b, double slack = 0.0) {
    return std::abs(a.value - b.value) <= a.radius + b.radius + slack;
  }
};

/// Neumaier-compensated accumulator; series here run to ~10^6 terms.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace alpha_luroth
