#pragma once

#include <limits>
#include <vector>

#include "bmt/finite_sequence.hpp"

namespace bmt::lorentz {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// Validated Lorentz exponent pair: p, q > 0; p = inf only together with q = inf
// (the sup-norm case).
struct Exponents {
  double p;
  double q;

  Exponents(double p_, double q_);

  bool weak() const { return q == inf; }
  // p' = p/(p-1) for p > 1.
  double conjugate_p() const;
};

// Distribution function: #{n : |seq(n)| > lambda} (strict inequality).
long distribution(const FiniteSequence& seq, double lambda);

// Nonincreasing rearrangement of the moduli, zeros trimmed.
std::vector<double> rearrangement(const FiniteSequence& seq);

// The distribution function of a finite sequence is a right-continuous step
// function: thresholds are the distinct nonzero moduli v_0 > ... > v_{M-1}, and
// counts[j] is the measure of {|f| >= v_j}, i.e. the value of mu on [v_j, v_{j-1}).
struct StepDistribution {
  std::vector<double> thresholds;
  std::vector<double> counts;
};

StepDistribution step_distribution(const FiniteSequence& seq);

// Exact l^{p,q} norm via the distribution-function integral
//   ( q int_0^inf lambda^{q-1} mu(lambda)^{q/p} dlambda )^{1/q}
// which is piecewise-exact for step distributions:
//   ( sum_j counts_j^{q/p} (v_j^q - v_{j+1}^q) )^{1/q},  v_M := 0.
// q = inf delegates to norm_weak.
double norm_pq(const FiniteSequence& seq, const Exponents& e);

// Weak norm: sup_lambda lambda mu(lambda)^{1/p} = max_j v*_j (j+1)^{1/p},
// with v* the nonincreasing rearrangement indexed from 0.
double norm_weak(const FiniteSequence& seq, double p);

// Grid approximation of an L^{p,q}(R) norm: each sample occupies measure h.
// Converges to the true norm as h -> 0 for piecewise-continuous functions.
double norm_grid(const std::vector<cplx>& samples, double h, const Exponents& e);

} // namespace bmt::lorentz
