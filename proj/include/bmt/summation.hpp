#pragma once

#include <complex>

namespace bmt {

// Neumaier's compensated summation.  All inner products and double sums in the
// operator paths go through this so that results are reproducible and the
// identity checks are not polluted by naive accumulation error.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Complex variant: two independent compensated accumulators.
class NeumaierSumC {
 public:
  void add(const std::complex<double>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_, im_;
};

} // namespace bmt
