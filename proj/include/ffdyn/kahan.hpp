#pragma once

#include <complex>

namespace ffdyn {

// Compensated accumulator; summation order is fixed by the caller, so
// results are bit-stable across runs.
struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double get() const { return s; }
};

struct KahanComplex {
  KahanSum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> get() const { return {re.get(), im.get()}; }
};

}  // namespace ffdyn
