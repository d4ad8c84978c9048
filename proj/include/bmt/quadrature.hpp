#pragma once

#include <vector>

#include "bmt/summation.hpp"
#include "bmt/util.hpp"

namespace bmt {

// Gauss-Legendre rule on [-1, 1].  Open rule: nodes are strictly interior, so
// panel endpoints may sit exactly on integrand discontinuities.
struct GLRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached, computed on first use by Newton iteration on the Legendre recurrence.
const GLRule& gauss_legendre(int order);

// Settings shared by the quadrature-backed operator paths.
struct QuadratureSpec {
  int order = 32;          // Gauss-Legendre points per panel (>= 2)
  int max_refine = 6;      // panel-doubling levels tried before giving up
  double tol = 1e-9;       // target on the refinement residual
  bool split = true;       // split panels at symbol discontinuities
};

// A Gauss-Legendre rule of order q integrates ~q/2.4 oscillation cycles per
// panel to near machine precision; panel counts are derived from this.
inline long panels_for(double cycles, int order) {
  const double per_panel = static_cast<double>(order) / 2.4;
  const long p = static_cast<long>(std::ceil(cycles / per_panel));
  return p < 1 ? 1 : p;
}

template <class F>
cplx integrate_panel(F&& f, double a, double b, const GLRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  NeumaierSumC s;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    s.add(rule.weights[i] * f(mid + half * rule.nodes[i]));
  return half * s.value();
}

// Integrate over [a, b] split into `panels` equal panels.
template <class F>
cplx integrate_uniform(F&& f, double a, double b, long panels, const GLRule& rule) {
  NeumaierSumC s;
  for (long k = 0; k < panels; ++k) {
    const double x0 = a + (b - a) * static_cast<double>(k) / static_cast<double>(panels);
    const double x1 = a + (b - a) * static_cast<double>(k + 1) / static_cast<double>(panels);
    s.add(integrate_panel(f, x0, x1, rule));
  }
  return s.value();
}

// Sorted deduplicated breakpoints of [lo, hi] including both ends; inputs
// outside [lo, hi] are discarded.
std::vector<double> clip_breakpoints(std::vector<double> points, double lo, double hi);

} // namespace bmt
