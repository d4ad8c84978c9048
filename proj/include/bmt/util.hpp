#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace bmt {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// sign with sign(0) = 0.  The symmetric convention keeps the sign symbol odd
// and is the one the kernel formulas assume.
inline double signum(double x) { return (x > 0.0) - (x < 0.0); }

// (-1)^n for possibly negative n.
inline double parity(long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// sinc(x) = sin(pi x)/(pi x), sinc(0) = 1.  Integer arguments are detected
// exactly so that interpolation identities hold without roundoff.
inline double sinc(double x) {
  const double r = std::nearbyint(x);
  if (x == r) return (x == 0.0) ? 1.0 : 0.0;
  return std::sin(pi * x) / (pi * x);
}

// e^{2 pi i t}
inline cplx unit_phase(double t) { return {std::cos(2.0 * pi * t), std::sin(2.0 * pi * t)}; }

// Thrown when an adaptive quadrature cannot meet its target tolerance; the
// residual estimate at the last refinement level is carried along.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double residual)
      : std::runtime_error(what + " (residual estimate " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Number of worker threads: BMT_THREADS if set, otherwise hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, n).  Each index writes only its own output slot, so
// results are identical for every thread count.  Exceptions are rethrown.
void parallel_for(long n, const std::function<void(long)>& body);

} // namespace bmt
