#pragma once

#include <cmath>
#include <limits>

namespace riesz {

/// Neumaier-compensated accumulator.
///
/// A -inf term absorbs the total: once added, value() stays -inf. This is the
/// propagation rule for logarithmic potentials evaluated at an atom.
class CompensatedSum
{
public:
  CompensatedSum& operator+=(double x) noexcept
  {
    if (neg_inf_) {
      return *this;
    }
    if (std::isinf(x) && x < 0) {
      neg_inf_ = true;
      return *this;
    }
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  [[nodiscard]] double value() const noexcept
  {
    return neg_inf_ ? -std::numeric_limits<double>::infinity() : sum_ + comp_;
  }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  bool neg_inf_ = false;
};

} // namespace riesz
