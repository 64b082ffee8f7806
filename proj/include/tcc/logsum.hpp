#ifndef TCC_LOGSUM_HPP
#define TCC_LOGSUM_HPP

#include <cmath>
#include <limits>

namespace tcc {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) in max-subtraction form. -inf operands drop out and an
/// all-(-inf) sum stays -inf; inputs must not be NaN.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

inline double log_add(double a, double b, double c) { return log_add(log_add(a, b), c); }

/// Streaming log-sum-exp: keeps the running max and the sum rescaled to it.
class LogAccumulator {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (max_ == kNegInf) {
      max_ = x;
      sum_ = 1.0;
    } else if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }

  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace tcc

#endif
