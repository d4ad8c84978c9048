#include "bmt/prototypes.hpp"

#include <cmath>
#include <stdexcept>

namespace bmt {

double raised_cosine_time(double x) {
  const double ax = std::abs(x);
  // phi(x) = sinc(x) (1 + 2 cos(pi x)) / (2 (1 - x^2)).  Near |x| = 1 both
  // sinc and the denominator vanish; the equivalent form below moves the zero
  // into sinc(1 - |x|) and stays fully accurate through the joint.
  if (std::abs(ax - 1.0) <= 0.25)
    return sinc(1.0 - ax) * (1.0 + 2.0 * std::cos(pi * ax)) / (2.0 * ax * (1.0 + ax));
  return sinc(x) * (1.0 + 2.0 * std::cos(pi * x)) / (2.0 * (1.0 - x * x));
}

Prototype Prototype::sinc_kernel() { return Prototype(PrototypeKind::SINC, 0.0); }

Prototype Prototype::raised_cosine(double scale) {
  if (!(scale > 0.0)) throw std::domain_error("raised_cosine: scale must be positive");
  return Prototype(PrototypeKind::RAISED_COSINE, scale);
}

Prototype Prototype::box_spectrum(double radius) {
  if (!(radius > 0.0)) throw std::domain_error("box_spectrum: radius must be positive");
  return Prototype(PrototypeKind::BOX_SPECTRUM, radius);
}

double Prototype::fourier_radius() const {
  switch (kind_) {
    case PrototypeKind::SINC: return 0.5;
    case PrototypeKind::RAISED_COSINE: return param_;
    case PrototypeKind::BOX_SPECTRUM: return param_;
  }
  return 0.0;
}

double Prototype::flat_radius() const {
  switch (kind_) {
    case PrototypeKind::SINC: return 0.5;
    case PrototypeKind::RAISED_COSINE: return 0.5 * param_;
    case PrototypeKind::BOX_SPECTRUM: return param_;
  }
  return 0.0;
}

double Prototype::operator()(double x) const {
  switch (kind_) {
    case PrototypeKind::SINC:
      return sinc(x);
    case PrototypeKind::RAISED_COSINE:
      return param_ * raised_cosine_time(param_ * x);
    case PrototypeKind::BOX_SPECTRUM:
      return 2.0 * param_ * sinc(2.0 * param_ * x);
  }
  return 0.0;
}

double Prototype::fourier(double xi) const {
  const double a = std::abs(xi);
  switch (kind_) {
    case PrototypeKind::SINC:
      return a <= 0.5 ? 1.0 : 0.0;
    case PrototypeKind::RAISED_COSINE: {
      const double u = a / param_;
      if (u <= 0.5) return 1.0;
      if (u >= 1.0) return 0.0;
      const double s = std::sin(pi * u);
      return s * s;
    }
    case PrototypeKind::BOX_SPECTRUM:
      return a <= param_ ? 1.0 : 0.0;
  }
  return 0.0;
}

double Prototype::envelope(double r) const {
  switch (kind_) {
    case PrototypeKind::SINC:
      return r > 0.0 ? std::min(1.0, 1.0 / (pi * r)) : 1.0;
    case PrototypeKind::RAISED_COSINE: {
      // |phi_rc(y)| <= 3/2 everywhere (nonnegative spectrum) and
      // <= 2/(pi y^3) for |y| >= 2; scale accordingly.
      const double s = param_;
      const double peak = 1.5 * s;
      if (s * r >= 2.0) return std::min(peak, 2.0 / (pi * s * s * r * r * r));
      return peak;
    }
    case PrototypeKind::BOX_SPECTRUM: {
      const double peak = 2.0 * param_;
      return r > 0.0 ? std::min(peak, 1.0 / (pi * r)) : peak;
    }
  }
  return 0.0;
}

PowerEnvelope Prototype::power_envelope() const {
  switch (kind_) {
    case PrototypeKind::SINC:
      return {1.0 / pi, 1.0, 1.0};
    case PrototypeKind::RAISED_COSINE:
      return {2.0 / (pi * param_ * param_), 3.0, 2.0 / param_};
    case PrototypeKind::BOX_SPECTRUM:
      return {1.0 / pi, 1.0, 1.0};
  }
  return {0.0, 0.0, 0.0};
}

std::vector<double> Prototype::fourier_breakpoints() const {
  switch (kind_) {
    case PrototypeKind::SINC:
      return {-0.5, 0.5};
    case PrototypeKind::RAISED_COSINE:
      return {-param_, -0.5 * param_, 0.5 * param_, param_};
    case PrototypeKind::BOX_SPECTRUM:
      return {-param_, param_};
  }
  return {};
}

} // namespace bmt
