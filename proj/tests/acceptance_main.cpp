// Acceptance gate: one line per criterion, exit code = number of failures.
//
// Each criterion pins the tolerances and trial counts it was specified with;
// criteria 1-3 also carry wall-clock budgets that are enforced, not advisory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bmt/harness.hpp"
#include "bmt/lorentz.hpp"
#include "bmt/operators.hpp"
#include "bmt/rng.hpp"
#include "bmt/symbols.hpp"

using bmt::cplx;
using bmt::FiniteSequence;
using bmt::pi;
using bmt::lorentz::Exponents;
using bmt::lorentz::norm_pq;
using bmt::lorentz::norm_weak;
using namespace bmt::harness;
namespace ops = bmt::operators;
namespace sym = bmt::symbols;

namespace {

double direct_lp(const FiniteSequence& s, double p) {
  double acc = 0.0;
  for (long n = s.lo(); n <= s.hi(); ++n) acc += std::pow(std::abs(s.at(n)), p);
  return std::pow(acc, 1.0 / p);
}

double brute_weak(const FiniteSequence& s, double p) {
  double best = 0.0;
  for (long n = s.lo(); n <= s.hi(); ++n) {
    const double lam = std::abs(s.at(n)) * (1.0 - 1e-12);
    if (lam <= 0.0) continue;
    best = std::max(
        best, lam * std::pow(static_cast<double>(bmt::lorentz::distribution(s, lam)),
                             1.0 / p));
  }
  return best;
}

FiniteSequence abs_power(const FiniteSequence& s, double r) {
  FiniteSequence::Builder b;
  for (long n = s.lo(); n <= s.hi(); ++n) {
    const double m = std::abs(s.at(n));
    if (m > 0.0) b.add(n, cplx{std::pow(m, r), 0.0});
  }
  return b.build();
}

} // namespace

int main() {
  int failures = 0;
  char buf[512];

  // budget <= 0 means no wall-clock requirement.
  const auto run = [&](int idx, const char* name, double budget,
                       const std::function<bool(std::string&)>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget > 0.0 && secs > budget) {
      ok = false;
      detail += " OVER TIME BUDGET";
    }
    if (budget > 0.0)
      std::printf("[%s] criterion-%d %s: %s [%.1fs of %.0fs]\n", ok ? "PASS" : "FAIL",
                  idx, name, detail.c_str(), secs, budget);
    else
      std::printf("[%s] criterion-%d %s: %s [%.1fs]\n", ok ? "PASS" : "FAIL", idx, name,
                  detail.c_str(), secs);
    if (!ok) ++failures;
  };

  run(1, "decomposition-identity", 60.0, [&](std::string& detail) {
    TrialConfig cfg;
    cfg.trials = 200;
    cfg.support_radius = 16;
    const Report r = verify_decomposition(cfg, {-2, -1, 2, 3}, 1e-9);
    std::snprintf(buf, sizeof buf, "max_residual=%.3g tol=1e-9 (4 alphas x 200 pairs)",
                  r.summary.at("max_residual").get<double>());
    detail = buf;
    return r.passed;
  });

  run(2, "kernel-closed-form", 120.0, [&](std::string& detail) {
    const std::vector<double> alphas = {0.5, -1.0 / 3.0, -1.0, 2.0, -2.0, 3.0};
    bool pinned = true;
    for (double al : alphas) pinned = pinned && std::abs(ops::kernel_c_alpha(al, 0, 0)) == 0.0;
    for (long s = 1; s <= 6; ++s) {
      const cplx want{0.0, -0.5 * bmt::parity(s) / (pi * static_cast<double>(s))};
      pinned = pinned && std::abs(ops::kernel_c_alpha(0.5, 0, s) - want) == 0.0;
    }
    const Report r = verify_kernel_oracle(alphas, 6, 32, 1e-7);
    std::snprintf(buf, sizeof buf, "max_abs_error=%.3g tol=1e-7 (6 alphas x 13x13 grid)%s",
                  r.summary.at("max_abs_error").get<double>(),
                  pinned ? "" : " pinned-row-mismatch");
    detail = buf;
    return r.passed && pinned;
  });

  run(3, "transference-relation", 300.0, [&](std::string& detail) {
    const auto f = bmt::extend_sequence(FiniteSequence::delta(0),
                                        bmt::Prototype::raised_cosine(1.0));
    const std::vector<sym::SymbolDescriptor> symbols = {
        sym::SymbolDescriptor::constant(cplx{1.0, 0.0}),
        sym::SymbolDescriptor::sign_line(2.0)};
    bool ok = true;
    double worst = 0.0;
    for (const auto& m : symbols) {
      const Report r = verify_transfer_relation(f, f, m, 8, {0.0, 0.25, -0.5},
                                                bmt::QuadratureSpec{}, 32, 1024, 1e-5);
      ok = ok && r.passed;
      worst = std::max(worst, r.summary.at("sup_discrepancy").get<double>());
    }
    std::snprintf(buf, sizeof buf,
                  "sup_discrepancy=%.3g tol=1e-5 (constant + sign symbols, k=8, |n|<=32)",
                  worst);
    detail = buf;
    return ok;
  });

  run(4, "lorentz-norm-suite", 0.0, [&](std::string& detail) {
    double worst_red = 0.0, worst_pow = 0.0, worst_weak = 0.0;
    {
      bmt::Rng rng(1000);
      for (int i = 0; i < 1000; ++i) {
        const FiniteSequence s = bmt::draw_sequence(rng, bmt::CoefficientLaw::GAUSSIAN, 10);
        if (s.empty()) continue;
        for (double p : {0.7, 1.0, 2.0, 3.0}) {
          const double a = norm_pq(s, Exponents(p, p));
          const double b = direct_lp(s, p);
          worst_red = std::max(worst_red, std::abs(a - b) / std::max(1.0, b));
        }
      }
    }
    {
      bmt::Rng rng(1001);
      for (int i = 0; i < 200; ++i) {
        const FiniteSequence s = bmt::draw_sequence(rng, bmt::CoefficientLaw::GAUSSIAN, 8);
        if (s.empty()) continue;
        for (double r : {0.5, 2.0}) {
          const double lhs = norm_pq(abs_power(s, r), Exponents(2.0, 3.0));
          const double rhs = std::pow(norm_pq(s, Exponents(2.0 * r, 3.0 * r)), r);
          worst_pow = std::max(worst_pow, std::abs(lhs - rhs) / std::max(1.0, rhs));
        }
      }
    }
    {
      bmt::Rng rng(1002);
      for (int i = 0; i < 500; ++i) {
        const FiniteSequence s = bmt::draw_sequence(rng, bmt::CoefficientLaw::GAUSSIAN, 12);
        if (s.empty()) continue;
        for (double p : {2.0 / 3.0, 1.0, 2.0}) {
          const double a = norm_weak(s, p);
          worst_weak =
              std::max(worst_weak, std::abs(a - brute_weak(s, p)) / std::max(1.0, a));
        }
      }
    }
    const double ex = norm_pq(FiniteSequence(0, {cplx{2.0, 0.0}, cplx{1.0, 0.0}}),
                              Exponents(1.0, 2.0));
    const bool sqrt7 = std::abs(ex - std::sqrt(7.0)) <= 1e-15;
    std::snprintf(buf, sizeof buf,
                  "pq_reduction=%.3g (1e-12) power_identity=%.3g (1e-10) weak_brute=%.3g "
                  "(1e-10) sqrt7=%s",
                  worst_red, worst_pow, worst_weak, sqrt7 ? "exact" : "MISMATCH");
    detail = buf;
    return worst_red <= 1e-12 && worst_pow <= 1e-10 && worst_weak <= 1e-10 && sqrt7;
  });

  run(5, "degenerate-symbols", 0.0, [&](std::string& detail) {
    bmt::Rng rng(2000);
    const auto one =
        sym::periodize_symbol(sym::SymbolDescriptor::constant(cplx{1.0, 0.0}), 3.0, 0.0);
    const auto ph = sym::periodize_symbol(sym::SymbolDescriptor::phase(1, -2), 1.0, 0.0);
    double worst_prod = 0.0, worst_shift = 0.0;
    for (int i = 0; i < 20; ++i) {
      const FiniteSequence a = bmt::draw_sequence(rng, bmt::CoefficientLaw::GAUSSIAN, 5);
      const FiniteSequence b = bmt::draw_sequence(rng, bmt::CoefficientLaw::GAUSSIAN, 5);
      const auto dp = ops::apply_Dm_quadrature(a, b, one, -8, 8);
      const auto ds = ops::apply_Dm_quadrature(a, b, ph, -8, 8);
      for (long n = -8; n <= 8; ++n) {
        worst_prod = std::max(worst_prod, std::abs(dp.seq.at(n) - a.at(n) * b.at(n)));
        worst_shift =
            std::max(worst_shift, std::abs(ds.seq.at(n) - a.at(n + 1) * b.at(n - 2)));
      }
    }
    double worst_hil = 0.0;
    const FiniteSequence d0 = FiniteSequence::delta(0);
    for (long n = -64; n <= 64; ++n) {
      if (n == 0) continue;
      const double want = 1.0 / (pi * static_cast<double>(n));
      worst_hil = std::max(
          worst_hil, std::abs(ops::hilbert_at(d0, n) - cplx{want, 0.0}) / std::abs(want));
    }
    std::snprintf(buf, sizeof buf,
                  "product=%.3g (1e-12) phase_shift=%.3g (1e-10) hilbert_delta_rel=%.3g "
                  "(1e-15)",
                  worst_prod, worst_shift, worst_hil);
    detail = buf;
    return worst_prod <= 1e-12 && worst_shift <= 1e-10 && worst_hil <= 1e-15;
  });

  run(6, "restriction-extension-equivalence", 0.0, [&](std::string& detail) {
    TrialConfig cfg;
    cfg.trials = 100;
    cfg.support_radius = 6;
    const std::pair<double, double> pqs[] = {{2.0, 2.0}, {1.5, 3.0}, {0.8, 0.8}};
    bool ok = true;
    double worst_per = 0.0, worst_cross = 0.0;
    for (double R : {0.2, 0.4}) {
      for (const auto& pq : pqs) {
        const Report r = verify_restriction_extension(cfg, R,
                                                      Exponents(pq.first, pq.second),
                                                      10.0, 100.0);
        ok = ok && r.passed;
        worst_per =
            std::max(worst_per, r.summary.at("per_trial_spread_max").get<double>());
        worst_cross =
            std::max(worst_cross, r.summary.at("cross_trial_spread").get<double>());
      }
    }
    std::snprintf(buf, sizeof buf,
                  "per_trial_spread=%.3g (<=10) cross_trial_spread=%.3g (<=100) "
                  "(R in {0.2,0.4} x 3 exponent pairs x 100 trials)",
                  worst_per, worst_cross);
    detail = buf;
    return ok;
  });

  run(7, "dilation-uniformity", 0.0, [&](std::string& detail) {
    TrialConfig cfg;
    cfg.trials = 20;
    cfg.support_radius = 8;
    cfg.exponents = {2.0, 2.0, 2.0, 2.0, 1.0, 1.0};
    const Report rs = uniformity_sweep(sym::SymbolDescriptor::sign_line(2.0), 0.0,
                                       {0.25, 1.0, 4.0, 16.0}, cfg,
                                       bmt::QuadratureSpec{});
    const Report rc = uniformity_sweep(sym::SymbolDescriptor::constant(cplx{1.0, 0.0}),
                                       0.5, {1.0, 4.0, 16.0}, cfg, bmt::QuadratureSpec{});
    std::snprintf(
        buf, sizeof buf, "sign_spread=%.10g (<=1+1e-6) const_scaling_dev=%.3g (<=1e-9)",
        rs.summary.at("spread").get<double>(),
        rc.summary.at("checks").at("scaling_deviation").get<double>());
    detail = buf;
    return rs.passed && rc.passed;
  });

  run(8, "weak-endpoint", 0.0, [&](std::string& detail) {
    TrialConfig cfg;
    cfg.trials = 500;
    cfg.support_radius = 8;
    const Report r = weak_endpoint_probe(2, 4.0 / 3.0, 4.0 / 3.0, cfg);
    std::snprintf(buf, sizeof buf, "growth_slope=%.3g (<0.5) running_max=%.6g",
                  r.summary.at("growth_slope").get<double>(),
                  r.summary.at("running_max").get<double>());
    detail = buf;
    return r.passed;
  });

  std::printf("acceptance: %d/8 criteria passed\n", 8 - failures);
  return failures;
}
