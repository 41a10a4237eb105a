#pragma once

#include <complex>

namespace smallres {

/// Kahan-Babuska (Neumaier) compensated summation.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (magnitude(sum_) >= magnitude(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + carry_; }

 private:
  static double magnitude(double v) { return v < 0 ? -v : v; }

  T sum_{};
  T carry_{};
};

/// Component-wise compensation for complex sums.
template <>
class CompensatedSum<std::complex<double>> {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  CompensatedSum& operator+=(std::complex<double> z) {
    add(z);
    return *this;
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<double> re_;
  CompensatedSum<double> im_;
};

}  // namespace smallres
