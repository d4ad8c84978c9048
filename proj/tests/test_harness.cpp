#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "bmt/harness.hpp"
#include "bmt/symbols.hpp"

using bmt::cplx;
using bmt::FiniteSequence;
using namespace bmt::harness;
namespace sym = bmt::symbols;

namespace {

// Pointwise product: the Cauchy-Schwarz model operator with exact ratio <= 1.
FiniteSequence product_op(const FiniteSequence& a, const FiniteSequence& b) {
  FiniteSequence::Builder o;
  const long lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
  for (long n = lo; n <= hi; ++n) {
    const cplx v = a.at(n) * b.at(n);
    if (v != cplx{}) o.add(n, v);
  }
  return o.build();
}

} // namespace

TEST_CASE("harness: decomposition campaign passes and is reproducible") {
  TrialConfig cfg;
  cfg.trials = 5;
  cfg.support_radius = 6;
  const std::vector<long> alphas = {-1, 2};
  const Report r1 = verify_decomposition(cfg, alphas);
  CHECK(r1.passed);
  CHECK(r1.summary.at("max_residual").get<double>() <= 1e-9);
  CHECK(r1.records.size() == 10);
  const Report r2 = verify_decomposition(cfg, alphas);
  CHECK(r1.to_json(false).dump() == r2.to_json(false).dump()); // byte-identical
  CHECK_THROWS_AS(verify_decomposition(cfg, {1}), std::domain_error);
}

TEST_CASE("harness: kernel oracle campaign") {
  const Report r = verify_kernel_oracle({0.5, -1.0}, 2);
  CHECK(r.passed);
  CHECK(r.summary.at("max_abs_error").get<double>() <= 1e-7);
  CHECK(r.records.size() == 2);
}

TEST_CASE("harness: norm estimation respects Cauchy-Schwarz and monotonicity") {
  TrialConfig cfg;
  cfg.trials = 10;
  cfg.support_radius = 6;
  cfg.exponents = {2.0, 2.0, 2.0, 2.0, 1.0, 1.0};
  const Report r10 = estimate_norm(product_op, cfg);
  const double est = r10.summary.at("estimate").get<double>();
  CHECK(est <= 1.0 + 1e-12);
  CHECK(est >= 1.0 - 1e-12); // aligned spikes attain equality
  CHECK(r10.summary.at("refinement_gain").get<double>() >= 0.0);

  TrialConfig cfg20 = cfg;
  cfg20.trials = 20;
  const Report r20 = estimate_norm(product_op, cfg20);
  CHECK(r20.summary.at("trial_max").get<double>() >=
        r10.summary.at("trial_max").get<double>()); // more trials never lose ground

  const Report again = estimate_norm(product_op, cfg);
  CHECK(again.to_json(false).dump() == r10.to_json(false).dump());
}

TEST_CASE("harness: hilbert norm estimate approaches the symbol supremum") {
  TrialConfig cfg;
  cfg.trials = 10;
  cfg.support_radius = 16;
  cfg.exponents = {2.0, 2.0, 2.0, 2.0, 2.0, 2.0};
  const BilinearOp op = [](const FiniteSequence& a, const FiniteSequence&) {
    return bmt::operators::hilbert_discrete(a, 256).seq;
  };
  const Report r = estimate_norm(op, cfg, FiniteSequence::delta(0));
  const double est = r.summary.at("estimate").get<double>();
  // The multiplier modulus climbs to 1 as the modulation frequency drops; the
  // slowest candidate in the mix already reaches ~0.98 in the infinite limit.
  CHECK(est >= 0.88);
  CHECK(est <= 1.0 + 1e-9);
}

TEST_CASE("harness: uniformity sweep is t-invariant for the sign symbol") {
  TrialConfig cfg;
  cfg.trials = 6;
  cfg.support_radius = 4;
  cfg.exponents = {2.0, 2.0, 2.0, 2.0, 1.0, 1.0};
  const Report r = uniformity_sweep(sym::SymbolDescriptor::sign_line(2.0), 0.0,
                                    {0.25, 4.0}, cfg, bmt::QuadratureSpec{});
  CHECK(r.passed);
  CHECK(r.summary.at("spread").get<double>() <= 1.0 + 1e-6);
  CHECK(r.records.size() == 2);
}

TEST_CASE("harness: uniformity sweep sees exact t^{1/p} scaling for constants") {
  TrialConfig cfg;
  cfg.trials = 5;
  cfg.support_radius = 4;
  cfg.exponents = {2.0, 2.0, 2.0, 2.0, 1.0, 1.0};
  const Report r = uniformity_sweep(sym::SymbolDescriptor::constant(cplx{1.0, 0.0}), 0.5,
                                    {1.0, 4.0}, cfg, bmt::QuadratureSpec{});
  CHECK(r.passed);
  CHECK(r.summary.at("checks").at("scaling_deviation").get<double>() <= 1e-9);
}

TEST_CASE("harness: weak endpoint probe stays bounded") {
  TrialConfig cfg;
  cfg.trials = 64;
  cfg.support_radius = 6;
  const Report r = weak_endpoint_probe(2, 4.0 / 3.0, 4.0 / 3.0, cfg);
  CHECK(r.passed);
  CHECK(r.summary.at("growth_slope").get<double>() < 0.5);
  CHECK(std::isfinite(r.summary.at("running_max").get<double>()));
  CHECK_THROWS_AS(weak_endpoint_probe(2, 1.1, 1.1, cfg), std::domain_error);
  CHECK_THROWS_AS(weak_endpoint_probe(1, 4.0 / 3.0, 4.0 / 3.0, cfg), std::domain_error);
}

TEST_CASE("harness: restriction/extension equivalence on a small batch") {
  TrialConfig cfg;
  cfg.trials = 6;
  cfg.support_radius = 3;
  const Report r = verify_restriction_extension(cfg, 0.3, bmt::lorentz::Exponents(2.0, 2.0));
  CHECK(r.passed);
  CHECK(r.summary.at("per_trial_spread_max").get<double>() <= 10.0);
  CHECK(r.summary.at("cross_trial_spread").get<double>() <= 100.0);
  CHECK_THROWS_AS(
      verify_restriction_extension(cfg, 0.6, bmt::lorentz::Exponents(2.0, 2.0)),
      std::domain_error);
}

TEST_CASE("harness: transference relation, constant-symbol smoke test") {
  const auto f = bmt::extend_sequence(FiniteSequence::delta(0),
                                      bmt::Prototype::raised_cosine(1.0));
  const auto m = sym::SymbolDescriptor::constant(cplx{1.0, 0.0});
  const Report r =
      verify_transfer_relation(f, f, m, 8, {0.0, -0.5}, bmt::QuadratureSpec{}, 4, 600);
  CHECK(r.passed);
  CHECK(r.summary.at("sup_discrepancy").get<double>() <= 1e-5);
  for (const auto& rec : r.records)
    CHECK(std::abs(rec.at("consistency_ratio").get<double>() - 1.0) <= 1e-3);
  CHECK_THROWS_AS(
      verify_transfer_relation(f, f, m, 3, {0.0}, bmt::QuadratureSpec{}, 4, 600),
      std::domain_error);
}

TEST_CASE("harness: cutoff translate sums grow no faster than M^{1/p0}") {
  for (double p0 : {1.5, 2.0}) {
    std::vector<double> lm, ls;
    double prev = 0.0;
    for (double M : {1.0, 2.0, 4.0, 8.0}) {
      const double s = psi_translate_sum(M, p0);
      CHECK(s > 0.0);
      CHECK(s >= prev); // monotone in M
      prev = s;
      lm.push_back(std::log(M));
      ls.push_back(std::log(s));
    }
    double mx = 0, my = 0;
    for (size_t i = 0; i < lm.size(); ++i) {
      mx += lm[i];
      my += ls[i];
    }
    mx /= 4.0;
    my /= 4.0;
    double sxy = 0, sxx = 0;
    for (size_t i = 0; i < lm.size(); ++i) {
      sxy += (lm[i] - mx) * (ls[i] - my);
      sxx += (lm[i] - mx) * (lm[i] - mx);
    }
    CHECK(sxy / sxx <= 1.0 / p0 + 0.1);
  }
  CHECK_THROWS_AS(psi_translate_sum(0.5, 2.0), std::domain_error);
  CHECK_THROWS_AS(psi_translate_sum(1.0, 1.0), std::domain_error);
}

TEST_CASE("harness: report serialization") {
  Report rep;
  rep.campaign = "demo";
  rep.config = json{{"seed", 1}};
  rep.records.push_back(json{{"a", 1}, {"b", 0.5}});
  rep.records.push_back(json{{"a", 2}, {"c", "z"}});
  rep.summary = json{{"passed", true}};
  rep.version = "0.0.0";
  rep.wall_seconds = 1.25;

  const json with = rep.to_json(true);
  CHECK(with.contains("meta"));
  CHECK(with.at("meta").at("wall_seconds").get<double>() == 1.25);
  const json without = rep.to_json(false);
  CHECK_FALSE(without.contains("meta"));
  CHECK(without.at("campaign") == "demo");

  const std::string jpath = "tmp_harness_report.json";
  const std::string cpath = "tmp_harness_report.csv";
  rep.write_json(jpath, false);
  rep.write_csv(cpath);
  {
    std::ifstream in(jpath);
    REQUIRE(in.good());
    json parsed;
    in >> parsed;
    CHECK(parsed.at("records").size() == 2);
    CHECK_FALSE(parsed.contains("meta"));
  }
  {
    std::ifstream in(cpath);
    REQUIRE(in.good());
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    CHECK(header == "a,b,c");
    CHECK(row1 == "1,0.5,");
    CHECK(row2 == "2,,z");
  }
  std::remove(jpath.c_str());
  std::remove(cpath.c_str());
}
