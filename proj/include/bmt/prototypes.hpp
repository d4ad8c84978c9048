#pragma once

#include <vector>

#include "bmt/util.hpp"

namespace bmt {

enum class PrototypeKind { SINC, RAISED_COSINE, BOX_SPECTRUM };

// Certified decay of a prototype: |phi(y)| <= amplitude / |y|^power for
// |y| >= min_radius.  power <= 1 means the tail sum cannot be certified.
struct PowerEnvelope {
  double amplitude;
  double power;
  double min_radius;
};

// Band-limited prototype with closed-form time and frequency evaluators.
//
//   SINC            phi(x) = sinc(x),            phi^(xi) = chi_[-1/2,1/2]
//   BOX_SPECTRUM(R) phi(x) = 2R sinc(2Rx),       phi^(xi) = chi_[-R,R]
//   RAISED_COSINE(s) phi^ = 1 on [-s/2, s/2], sin^2(pi |xi|/s) roll-off to
//                   +-s, zero beyond; phi(x) = s phi_rc(s x) decays like
//                   |x|^-3, which makes truncated sums certifiable.
//
// The raised-cosine spectrum is nonnegative, so sup |phi| = phi(0) = 3s/2.
class Prototype {
 public:
  static Prototype sinc_kernel();
  static Prototype raised_cosine(double scale = 1.0);
  static Prototype box_spectrum(double radius);

  PrototypeKind kind() const { return kind_; }
  // Radius of the Fourier support [-R, R].
  double fourier_radius() const;
  // phi^ is identically 1 on [-flat_radius, flat_radius] (raised cosine);
  // for the indicator prototypes the whole support is flat at the box height.
  double flat_radius() const;

  double operator()(double x) const;   // phi(x)
  double fourier(double xi) const;     // phi^(xi)

  // Nonincreasing bound on |phi(y)| valid for all |y| >= r.
  double envelope(double r) const;
  PowerEnvelope power_envelope() const;

  // Kinks of phi^ (integration breakpoints), symmetric about 0.
  std::vector<double> fourier_breakpoints() const;

 private:
  Prototype(PrototypeKind k, double param) : kind_(k), param_(param) {}
  PrototypeKind kind_;
  double param_; // RAISED_COSINE: scale s; BOX_SPECTRUM: radius R; SINC: unused
};

// The base raised-cosine pulse (scale 1): spectrum 1 on [-1/2,1/2] with
// sin^2 roll-off to +-1.  Evaluated in a form that is stable across the
// removable singularities at |x| = 1.
double raised_cosine_time(double x);

} // namespace bmt
