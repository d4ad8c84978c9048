#include "bmt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bmt {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

GLRule compute_rule(int order) {
  GLRule rule;
  rule.nodes.resize(static_cast<size_t>(order));
  rule.weights.resize(static_cast<size_t>(order));
  for (int i = 0; i < order; ++i) {
    // Standard initial guess, then Newton.
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(order, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(order, x, p, dp);
    rule.nodes[static_cast<size_t>(order - 1 - i)] = x;
    rule.weights[static_cast<size_t>(order - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

} // namespace

const GLRule& gauss_legendre(int order) {
  if (order < 2) throw std::domain_error("gauss_legendre: order must be >= 2");
  static std::mutex mtx;
  static std::map<int, GLRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

std::vector<double> clip_breakpoints(std::vector<double> points, double lo, double hi) {
  points.push_back(lo);
  points.push_back(hi);
  std::sort(points.begin(), points.end());
  std::vector<double> out;
  for (double x : points) {
    if (x < lo || x > hi) continue;
    if (out.empty() || x > out.back() + 1e-15) out.push_back(x);
  }
  if (out.size() < 2) out = {lo, hi};
  return out;
}

} // namespace bmt
