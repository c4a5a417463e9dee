#pragma once

#include <cmath>

namespace gjq {

/// Neumaier's variant of Kahan summation: the running compensation also
/// captures the error when the incoming term is larger than the sum.
template <class Value>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(Value v) {
    const Value t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
    return *this;
  }

  [[nodiscard]] Value value() const { return sum_ + comp_; }

 private:
  Value sum_{0};
  Value comp_{0};
};

}  // namespace gjq
