#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bmt/bandlimited.hpp"
#include "bmt/finite_sequence.hpp"
#include "bmt/lorentz.hpp"
#include "bmt/operators.hpp"
#include "bmt/rng.hpp"

namespace bmt::harness {

using json = nlohmann::ordered_json;
using symbols::SymbolDescriptor;

// Lorentz exponent bookkeeping for one bilinear estimate:
// (p1,q1) x (p2,q2) -> (p3,q3), with the derived 1/p = 1/p1 + 1/p2 - 1/p3.
struct ExponentTuple {
  double p1 = 2, q1 = 2, p2 = 2, q2 = 2, p3 = 1, q3 = 1;
  double derived_inv_p() const { return 1.0 / p1 + 1.0 / p2 - 1.0 / p3; }
};

struct TrialConfig {
  std::uint64_t seed = default_seed;
  long trials = 100;
  long support_radius = 8;
  CoefficientLaw law = CoefficientLaw::GAUSSIAN;
  long sparse_k = 4;
  ExponentTuple exponents;
};

// Campaign output.  Identical config (seed included) gives byte-identical
// {campaign, config, records, summary, version}; wall-clock timing lives in a
// separate "meta" block excluded from that determinism contract.
struct Report {
  std::string campaign;
  json config = json::object();
  std::vector<json> records;
  json summary = json::object();
  std::string version;
  bool passed = true;
  double wall_seconds = 0.0;

  json to_json(bool with_meta = true) const;
  void write_json(const std::string& path, bool with_meta = true) const;
  // One record per row; columns are the union of record keys.
  void write_csv(const std::string& path) const;
};

// Residual of the exact decomposition identity, per alpha and trial.
Report verify_decomposition(const TrialConfig& cfg, const std::vector<long>& alphas,
                            double tol = 1e-9);

// kernel_c_alpha against the split 2D quadrature of the sign symbol, for
// (r, s) in [-range, range]^2.
Report verify_kernel_oracle(const std::vector<double>& alphas, long range, int order = 32,
                            double tol = 1e-7);

// C_m(f,g)(k^{-1}(n+u)) against D_{m~_k}(a_{k,u}, b_{k,u})(n) on |n| <= window,
// with a_{k,u}(n) = f(k^{-1}(n+u)) sampled out to |n| <= sample_radius.
// Requires k >= 4R for R bounding both Fourier radii.
Report verify_transfer_relation(const BandLimitedFunction& f, const BandLimitedFunction& g,
                                const SymbolDescriptor& m, long k,
                                const std::vector<double>& u_list, const QuadratureSpec& spec,
                                long window = 32, long sample_radius = 1024, double tol = 1e-5);

// Stability of norm_grid(f) / norm_pq(a_u) across u in {-1/2,-1/4,0,1/4,1/2}
// for random f of Fourier radius R < 1/2.
Report verify_restriction_extension(const TrialConfig& cfg, double R,
                                    const lorentz::Exponents& e, double per_trial_bound = 10.0,
                                    double cross_trial_bound = 100.0);

using BilinearOp = std::function<FiniteSequence(const FiniteSequence&, const FiniteSequence&)>;

// Empirical lower bound on ||op|| as a map l^{p1,q1} x l^{p2,q2} -> l^{p3,q3}:
// max ratio over a candidate mix (law draws, spikes, blocks, modulated blocks)
// followed by a 32-step coordinatewise refinement of the best pair.  When
// fixed_b is set, only a is drawn (linear-operator probing).
Report estimate_norm(const BilinearOp& op, const TrialConfig& cfg,
                     const std::optional<FiniteSequence>& fixed_b = std::nullopt);

// estimate_norm for D_{m~_{t,p}} across t_list under identical per-trial draws.
// Asserts exact t-invariance for sign-line symbols with inv_p = 0 and the
// t^{inv_p} scaling law for constant symbols; other symbols are recorded only.
Report uniformity_sweep(const SymbolDescriptor& m, double inv_p,
                        const std::vector<double>& t_list, const TrialConfig& cfg,
                        const QuadratureSpec& spec);

// Running max of norm_weak(H_alpha(a,b), 2/3) / (||a||_{p1} ||b||_{p2}) with
// 1/p1 + 1/p2 = 3/2, 1 < p1, p2 <= 2; fits growth in log(trial) and reports
// the slope (stability probe -- an empirical check, not a bound).
Report weak_endpoint_probe(long alpha, double p1, double p2, const TrialConfig& cfg);

// sum_k || psi_M(. + k) ||_{L^{p'}[-1/2,1/2]} for the cutoff family psi_M,
// where p' is the conjugate of p0; the translate-sum statistic whose growth
// in M is expected to be ~ M^{1/p0}.
double psi_translate_sum(double M, double p0);

} // namespace bmt::harness
