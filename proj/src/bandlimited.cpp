#include "bmt/bandlimited.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmt/summation.hpp"

namespace bmt {

BandLimitedFunction::BandLimitedFunction(FiniteSequence coeffs, Prototype proto,
                                         double dilation)
    : coeffs_(std::move(coeffs)), proto_(proto), dilation_(dilation) {
  if (!(dilation_ > 0.0))
    throw std::domain_error("BandLimitedFunction: dilation must be positive");
}

cplx BandLimitedFunction::eval(double x) const {
  if (coeffs_.empty()) return {0.0, 0.0};
  const double y = dilation_ * x;
  NeumaierSumC s;
  const long lo = coeffs_.lo();
  for (long i = 0; i < coeffs_.size(); ++i)
    s.add(coeffs_.values()[static_cast<size_t>(i)] * proto_(y - static_cast<double>(lo + i)));
  return s.value();
}

cplx BandLimitedFunction::coeff_symbol(double xi) const {
  NeumaierSumC s;
  const long lo = coeffs_.empty() ? 0 : coeffs_.lo();
  for (long i = 0; i < coeffs_.size(); ++i)
    s.add(coeffs_.values()[static_cast<size_t>(i)] *
          unit_phase(-static_cast<double>(lo + i) * xi));
  return s.value();
}

cplx BandLimitedFunction::fourier(double xi) const {
  const double u = xi / dilation_;
  const double env = proto_.fourier(u);
  if (env == 0.0) return {0.0, 0.0};
  return coeff_symbol(u) * env / dilation_;
}

BandLimitedFunction BandLimitedFunction::dilated(double s) const {
  return BandLimitedFunction(coeffs_, proto_, dilation_ * s);
}

std::vector<double> BandLimitedFunction::fourier_breakpoints() const {
  std::vector<double> b = proto_.fourier_breakpoints();
  for (double& x : b) x *= dilation_;
  return b;
}

BandLimitedFunction extend_sequence(const FiniteSequence& a, const Prototype& proto) {
  return BandLimitedFunction(a, proto);
}

cplx shannon_reconstruct(const FiniteSequence& samples, double R, double x,
                         const Prototype& proto) {
  if (!(R > 0.0)) throw std::domain_error("shannon_reconstruct: R must be positive");
  if (samples.empty()) return {0.0, 0.0};
  const double y = 2.0 * R * x;
  NeumaierSumC s;
  const long lo = samples.lo();
  for (long i = 0; i < samples.size(); ++i)
    s.add(samples.values()[static_cast<size_t>(i)] * proto(y - static_cast<double>(lo + i)));
  return s.value();
}

FiniteSequence restrict_lattice_window(const BandLimitedFunction& f, double u,
                                       long n_lo, long n_hi) {
  if (n_hi < n_lo) return {};
  std::vector<cplx> v(static_cast<size_t>(n_hi - n_lo + 1));
  for (long n = n_lo; n <= n_hi; ++n)
    v[static_cast<size_t>(n - n_lo)] = f.eval(static_cast<double>(n) + u);
  return FiniteSequence(n_lo, std::move(v));
}

FiniteSequence restrict_lattice(const BandLimitedFunction& f, double u,
                                double trunc_floor, long max_radius,
                                double* tail_bound) {
  // u in [-1/2, 1/2] is taken as-is; anything else is reduced mod 1 with the
  // complementary integer shift applied to the index.
  const long j = (u >= -0.5 && u <= 0.5) ? 0 : std::lround(u);
  const double ur = u - static_cast<double>(j);

  if (f.coeffs().empty()) {
    if (tail_bound) *tail_bound = 0.0;
    return {};
  }

  // |f(n+u)| <= ||a||_1 * envelope(distance from t(n+u) to the coeff hull).
  const double a1 = f.coeffs().l1();
  const double t = f.dilation();
  const auto bound_at = [&](double y) {
    const double ty = t * y;
    const double lo = static_cast<double>(f.coeffs().lo());
    const double hi = static_cast<double>(f.coeffs().hi());
    double gap = 0.0;
    if (ty < lo) gap = lo - ty;
    else if (ty > hi) gap = ty - hi;
    return a1 * f.prototype().envelope(gap);
  };

  const long hull_lo = static_cast<long>(std::floor(static_cast<double>(f.coeffs().lo()) / t)) - 1;
  const long hull_hi = static_cast<long>(std::ceil(static_cast<double>(f.coeffs().hi()) / t)) + 1;
  long n_lo = hull_lo, n_hi = hull_hi;
  while (hull_lo - n_lo < max_radius &&
         bound_at(static_cast<double>(n_lo - 1) + ur) >= trunc_floor)
    --n_lo;
  while (n_hi - hull_hi < max_radius &&
         bound_at(static_cast<double>(n_hi + 1) + ur) >= trunc_floor)
    ++n_hi;
  if (tail_bound)
    *tail_bound = std::max(bound_at(static_cast<double>(n_lo - 1) + ur),
                           bound_at(static_cast<double>(n_hi + 1) + ur));

  std::vector<cplx> v(static_cast<size_t>(n_hi - n_lo + 1));
  for (long n = n_lo; n <= n_hi; ++n)
    v[static_cast<size_t>(n - n_lo)] = f.eval(static_cast<double>(n) + ur);
  // Trim sub-floor edges (interior entries are kept whatever their size).
  size_t lead = 0, tail = v.size();
  while (lead < tail && std::abs(v[lead]) < trunc_floor) ++lead;
  while (tail > lead && std::abs(v[tail - 1]) < trunc_floor) --tail;
  std::vector<cplx> w(v.begin() + static_cast<long>(lead), v.begin() + static_cast<long>(tail));
  FiniteSequence a(n_lo + static_cast<long>(lead), std::move(w));
  return a.shifted(-j);
}

cplx periodize(const std::function<cplx(double)>& f, const PowerEnvelope& env,
               double x, double tail_tol) {
  if (!(tail_tol > 0.0)) throw std::domain_error("periodize: tail_tol must be positive");
  if (env.amplitude < 0.0) throw std::domain_error("periodize: negative envelope");
  // Reduce x to [-1/2, 1/2] (the sum is 1-periodic by construction).
  const double xr = x - std::nearbyint(x);

  long K = 2;
  if (env.amplitude > 0.0) {
    if (env.power <= 1.0)
      throw std::domain_error(
          "periodize: envelope decays too slowly to certify the tail");
    // sum_{|k| >= K} A |xr + k|^-p <= 2A (K - 1/2)^{1-p} / (p - 1) for |xr| <= 1/2.
    const double target = tail_tol * (env.power - 1.0) / (2.0 * env.amplitude);
    const double k_real = 0.5 + std::pow(target, 1.0 / (1.0 - env.power));
    if (!(k_real < 1e7))
      throw std::domain_error("periodize: envelope insufficient for requested tolerance");
    K = std::max<long>(K, static_cast<long>(std::ceil(k_real)));
    K = std::max<long>(K, static_cast<long>(std::ceil(env.min_radius)) + 1);
  }

  NeumaierSumC s;
  for (long k = -K; k <= K; ++k) s.add(f(xr + static_cast<double>(k)));
  return s.value();
}

Prototype make_cutoff(double M) {
  if (!(M >= 1.0)) throw std::domain_error("make_cutoff: M must be >= 1");
  return Prototype::raised_cosine(2.0 * M);
}

} // namespace bmt
