#include "bmt/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmt/summation.hpp"

namespace bmt::lorentz {

Exponents::Exponents(double p_, double q_) : p(p_), q(q_) {
  if (!(p > 0.0) || !(q > 0.0))
    throw std::domain_error("Lorentz exponents must be positive");
  if (p == inf && q != inf)
    throw std::domain_error("p = inf requires q = inf");
}

double Exponents::conjugate_p() const {
  if (!(p > 1.0)) throw std::domain_error("conjugate exponent needs p > 1");
  if (p == inf) return 1.0;
  return p / (p - 1.0);
}

long distribution(const FiniteSequence& seq, double lambda) {
  if (lambda < 0.0) throw std::domain_error("distribution: lambda must be >= 0");
  long count = 0;
  for (const cplx& v : seq.values())
    if (std::abs(v) > lambda) ++count;
  return count;
}

std::vector<double> rearrangement(const FiniteSequence& seq) {
  std::vector<double> m;
  m.reserve(seq.values().size());
  for (const cplx& v : seq.values()) {
    const double a = std::abs(v);
    if (a > 0.0) m.push_back(a);
  }
  std::sort(m.begin(), m.end(), std::greater<double>());
  return m;
}

StepDistribution step_distribution(const FiniteSequence& seq) {
  StepDistribution d;
  const std::vector<double> m = rearrangement(seq);
  for (size_t i = 0; i < m.size(); ++i) {
    if (d.thresholds.empty() || m[i] < d.thresholds.back()) {
      d.thresholds.push_back(m[i]);
      d.counts.push_back(static_cast<double>(i + 1));
    } else {
      d.counts.back() = static_cast<double>(i + 1);
    }
  }
  return d;
}

namespace {

// Shared core: thresholds v_0 > ... > v_{M-1} with weights w_j = mu on
// [v_j, v_{j-1}).  Piecewise-exact evaluation of the q-integral; no quadrature.
double step_norm(const std::vector<double>& v, const std::vector<double>& w,
                 const Exponents& e) {
  if (v.empty()) return 0.0;
  if (e.q == inf) {
    // sup_lambda lambda mu(lambda)^{1/p}; the sup over each step is attained
    // as lambda -> v_j^-.
    const double ip = (e.p == inf) ? 0.0 : 1.0 / e.p;
    double best = 0.0;
    for (size_t j = 0; j < v.size(); ++j)
      best = std::max(best, v[j] * std::pow(w[j], ip));
    return best;
  }
  const double qp = e.q / e.p;
  NeumaierSum s;
  for (size_t j = 0; j < v.size(); ++j) {
    const double hi = std::pow(v[j], e.q);
    const double lo = (j + 1 < v.size()) ? std::pow(v[j + 1], e.q) : 0.0;
    s.add(std::pow(w[j], qp) * (hi - lo));
  }
  return std::pow(s.value(), 1.0 / e.q);
}

} // namespace

double norm_pq(const FiniteSequence& seq, const Exponents& e) {
  const StepDistribution d = step_distribution(seq);
  return step_norm(d.thresholds, d.counts, e);
}

double norm_weak(const FiniteSequence& seq, double p) {
  if (!(p > 0.0)) throw std::domain_error("norm_weak: p must be positive");
  const std::vector<double> v = rearrangement(seq);
  const double ip = (p == inf) ? 0.0 : 1.0 / p;
  double best = 0.0;
  for (size_t j = 0; j < v.size(); ++j)
    best = std::max(best, v[j] * std::pow(static_cast<double>(j + 1), ip));
  return best;
}

double norm_grid(const std::vector<cplx>& samples, double h, const Exponents& e) {
  if (!(h > 0.0)) throw std::domain_error("norm_grid: spacing must be positive");
  std::vector<double> m;
  m.reserve(samples.size());
  for (const cplx& v : samples) {
    const double a = std::abs(v);
    if (a > 0.0) m.push_back(a);
  }
  std::sort(m.begin(), m.end(), std::greater<double>());
  std::vector<double> v, w;
  for (size_t i = 0; i < m.size(); ++i) {
    if (v.empty() || m[i] < v.back()) {
      v.push_back(m[i]);
      w.push_back(h * static_cast<double>(i + 1));
    } else {
      w.back() = h * static_cast<double>(i + 1);
    }
  }
  return step_norm(v, w, e);
}

} // namespace bmt::lorentz
