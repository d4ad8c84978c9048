// bmt: command-line front end for the bilinear multiplier toolkit.
//
// Subcommands: norm, apply {bht, hilbert, dm-kernel, dm-quad}, verify
// {decomposition, kernel, transfer, equivalence, uniformity, endpoint},
// symbol-grid.  All floating-point output is printed with %.17g.  Exit codes:
// 0 success / verification passed, 1 verification failed (the report is still
// written), 2 configuration or input errors.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "bmt/bandlimited.hpp"
#include "bmt/finite_sequence.hpp"
#include "bmt/harness.hpp"
#include "bmt/lorentz.hpp"
#include "bmt/operators.hpp"
#include "bmt/prototypes.hpp"
#include "bmt/rng.hpp"
#include "bmt/symbols.hpp"
#include "bmt/version.hpp"

namespace {

using bmt::cplx;
using bmt::FiniteSequence;
using bmt::symbols::SymbolDescriptor;

double parse_double(const std::string& s) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (...) {
    throw std::invalid_argument("bad number: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("bad number: '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (...) {
    throw std::invalid_argument("bad integer: '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("bad integer: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t at = s.find(sep, start);
    if (at == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

// Complex literal: "1.5", "-2", "i", "-i", "2i", "1+2i", "-1.5e-2-0.25i".
cplx parse_complex(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return cplx{parse_double(s), 0.0};
  s.pop_back();
  size_t cut = std::string::npos;
  for (size_t j = s.size(); j-- > 1;) {
    if ((s[j] == '+' || s[j] == '-') && s[j - 1] != 'e' && s[j - 1] != 'E') {
      cut = j;
      break;
    }
  }
  if (cut == std::string::npos) {
    if (s.empty() || s == "+") return cplx{0.0, 1.0};
    if (s == "-") return cplx{0.0, -1.0};
    return cplx{0.0, parse_double(s)};
  }
  const std::string re = s.substr(0, cut);
  const std::string im = s.substr(cut);
  const double iv = (im == "+") ? 1.0 : (im == "-") ? -1.0 : parse_double(im);
  return cplx{parse_double(re), iv};
}

// Sequence literal: "delta:K", "values:z1,z2,...[@OFFSET]", or a bare comma
// list "z1,z2,..." supported starting at offset 0.
FiniteSequence parse_sequence(const std::string& lit) {
  if (lit.rfind("delta:", 0) == 0) return FiniteSequence::delta(parse_long(lit.substr(6)));
  std::string body = lit;
  if (body.rfind("values:", 0) == 0) body = body.substr(7);
  long offset = 0;
  const size_t at = body.rfind('@');
  if (at != std::string::npos) {
    offset = parse_long(body.substr(at + 1));
    body = body.substr(0, at);
  }
  std::vector<cplx> vals;
  for (const std::string& tok : split(body, ',')) vals.push_back(parse_complex(tok));
  return FiniteSequence(offset, std::move(vals));
}

FiniteSequence read_sequence_file(const std::string& path, long offset) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sequence file: " + path);
  std::vector<cplx> vals;
  std::string line;
  while (std::getline(in, line)) {
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    size_t b = line.find_last_not_of(" \t\r");
    vals.push_back(parse_complex(line.substr(a, b - a + 1)));
  }
  if (vals.empty()) throw std::invalid_argument("sequence file has no values: " + path);
  return FiniteSequence(offset, std::move(vals));
}

// Symbol literal: "one", "sign:ALPHA[:AMP]", "const:Z", "phase:J1,J2",
// "grid:PATH".
SymbolDescriptor parse_symbol(const std::string& lit) {
  if (lit == "one") return SymbolDescriptor::constant(cplx{1.0, 0.0});
  const size_t colon = lit.find(':');
  const std::string head = lit.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : lit.substr(colon + 1);
  if (head == "sign") {
    const size_t c2 = rest.find(':');
    if (c2 == std::string::npos) return SymbolDescriptor::sign_line(parse_double(rest));
    return SymbolDescriptor::sign_line(parse_double(rest.substr(0, c2)),
                                       parse_complex(rest.substr(c2 + 1)));
  }
  if (head == "const") return SymbolDescriptor::constant(parse_complex(rest));
  if (head == "phase") {
    const auto parts = split(rest, ',');
    if (parts.size() != 2) throw std::invalid_argument("phase literal needs j1,j2");
    return SymbolDescriptor::phase(parse_long(parts[0]), parse_long(parts[1]));
  }
  if (head == "grid") return bmt::symbols::load_grid_csv(rest);
  throw std::invalid_argument("unknown symbol literal: " + lit);
}

std::vector<double> parse_list_double(const std::string& s) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_double(tok));
  return out;
}

std::vector<long> parse_list_long(const std::string& s) {
  std::vector<long> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_long(tok));
  return out;
}

bmt::CoefficientLaw parse_law(const std::string& s) {
  if (s == "gaussian") return bmt::CoefficientLaw::GAUSSIAN;
  if (s == "sparse") return bmt::CoefficientLaw::SPARSE;
  if (s == "rademacher") return bmt::CoefficientLaw::RADEMACHER;
  throw std::invalid_argument("unknown law: " + s + " (gaussian|sparse|rademacher)");
}

void print_sequence(const FiniteSequence& s) {
  for (long n = s.lo(); n <= s.hi(); ++n) {
    const cplx v = s.at(n);
    std::printf("%ld %.17g %.17g\n", n, v.real(), v.imag());
  }
}

void write_sequence_json(const FiniteSequence& s, const std::string& path,
                         const char* extra_key = nullptr, double extra = 0.0) {
  bmt::harness::json j;
  j["offset"] = s.lo();
  bmt::harness::json vals = bmt::harness::json::array();
  for (long n = s.lo(); n <= s.hi(); ++n) {
    const cplx v = s.at(n);
    vals.push_back(bmt::harness::json::array({v.real(), v.imag()}));
  }
  j["values"] = vals;
  if (extra_key) j[extra_key] = extra;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(2) << "\n";
}

int finish_report(const bmt::harness::Report& rep, const std::string& out,
                  const std::string& csv, bool no_meta) {
  if (!out.empty()) rep.write_json(out, !no_meta);
  if (!csv.empty()) rep.write_csv(csv);
  std::printf("%s %s %s\n", rep.passed ? "PASS" : "FAIL", rep.campaign.c_str(),
              rep.summary.dump().c_str());
  return rep.passed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"bilinear multiplier toolkit"};
  app.set_version_flag("--version", bmt::version);
  app.require_subcommand(1);

  // ---- norm ----------------------------------------------------------------
  auto* norm = app.add_subcommand("norm", "Lorentz sequence norm of a finite sequence");
  std::string norm_values, norm_file;
  long norm_offset = 0;
  std::string norm_p = "2", norm_q;
  norm->add_option("--values", norm_values, "comma-separated complex values");
  norm->add_option("--file", norm_file, "file with one complex value per line");
  norm->add_option("--offset", norm_offset, "index of the first value (default 0)");
  norm->add_option("--p", norm_p, "primary exponent p (number or 'inf')");
  norm->add_option("--q", norm_q, "secondary exponent q (number or 'inf'; default q = p)");

  // ---- apply ---------------------------------------------------------------
  auto* apply = app.add_subcommand("apply", "apply a discrete operator to sequences");
  apply->require_subcommand(1);
  std::string ap_a = "delta:0", ap_b = "delta:0", ap_symbol = "one", ap_out;
  double ap_t = 1.0, ap_inv_p = 0.0, ap_tol = 1e-9;
  long ap_alpha = 2, ap_window = 16;
  int ap_order = 32, ap_refine = 6;
  bool ap_no_split = false;

  auto* ap_bht = apply->add_subcommand("bht", "discrete bilinear Hilbert transform H_alpha");
  ap_bht->add_option("--alpha", ap_alpha, "integer dilation alpha (not 0 or 1)");
  ap_bht->add_option("--a", ap_a, "first sequence literal");
  ap_bht->add_option("--b", ap_b, "second sequence literal");
  ap_bht->add_option("--out", ap_out, "write the result as JSON");

  auto* ap_hil = apply->add_subcommand("hilbert", "discrete Hilbert transform");
  ap_hil->add_option("--a", ap_a, "sequence literal");
  ap_hil->add_option("--window", ap_window, "output window half-width (default 256)");
  ap_hil->add_option("--out", ap_out, "write the result as JSON");

  auto* ap_dmk = apply->add_subcommand("dm-kernel", "D_m via Fourier-coefficient kernel");
  ap_dmk->add_option("--symbol", ap_symbol, "symbol literal");
  ap_dmk->add_option("--t", ap_t, "periodization dilation t > 0");
  ap_dmk->add_option("--inv-p", ap_inv_p, "dilation exponent 1/p >= 0");
  ap_dmk->add_option("--a", ap_a, "first sequence literal");
  ap_dmk->add_option("--b", ap_b, "second sequence literal");
  ap_dmk->add_option("--window", ap_window, "output window half-width");
  ap_dmk->add_option("--order", ap_order, "Gauss-Legendre order");
  ap_dmk->add_option("--tol", ap_tol, "kernel coefficient tolerance");
  ap_dmk->add_option("--out", ap_out, "write the result as JSON");

  auto* ap_dmq = apply->add_subcommand("dm-quad", "D_m via frequency-side quadrature");
  ap_dmq->add_option("--symbol", ap_symbol, "symbol literal");
  ap_dmq->add_option("--t", ap_t, "periodization dilation t > 0");
  ap_dmq->add_option("--inv-p", ap_inv_p, "dilation exponent 1/p >= 0");
  ap_dmq->add_option("--a", ap_a, "first sequence literal");
  ap_dmq->add_option("--b", ap_b, "second sequence literal");
  ap_dmq->add_option("--window", ap_window, "output window half-width");
  ap_dmq->add_option("--order", ap_order, "Gauss-Legendre order");
  ap_dmq->add_option("--max-refine", ap_refine, "panel-doubling passes");
  ap_dmq->add_option("--tol", ap_tol, "refinement tolerance");
  ap_dmq->add_flag("--no-split", ap_no_split, "disable discontinuity splitting");
  ap_dmq->add_option("--out", ap_out, "write the result as JSON");

  // ---- verify --------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->require_subcommand(1);
  std::string v_out, v_csv;
  bool v_no_meta = false;
  std::uint64_t v_seed = bmt::default_seed;
  long v_trials = 100, v_radius = 8, v_sparse_k = 4;
  std::string v_law = "gaussian";

  auto add_common = [&](CLI::App* c, bool with_draws) {
    c->add_option("--out", v_out, "write the JSON report here");
    c->add_option("--csv", v_csv, "write the per-record CSV here");
    c->add_flag("--no-meta", v_no_meta, "omit timing metadata from the JSON report");
    if (with_draws) {
      c->add_option("--seed", v_seed, "RNG seed");
      c->add_option("--trials", v_trials, "number of trials");
      c->add_option("--radius", v_radius, "support radius of random draws");
      c->add_option("--law", v_law, "coefficient law: gaussian|sparse|rademacher");
      c->add_option("--sparse-k", v_sparse_k, "nonzero count for the sparse law");
    }
  };

  std::string vd_alphas = "-1,2";
  double vd_tol = 1e-9;
  auto* v_dec = verify->add_subcommand("decomposition", "exact BHT decomposition identity");
  v_dec->add_option("--alphas", vd_alphas, "comma-separated integer dilations");
  v_dec->add_option("--tol", vd_tol, "sup-norm tolerance");
  add_common(v_dec, true);

  std::string vk_alphas = "0.5,-1,2";
  long vk_range = 6;
  int vk_order = 32;
  double vk_tol = 1e-7;
  auto* v_ker = verify->add_subcommand("kernel", "closed-form kernel vs quadrature");
  v_ker->add_option("--alphas", vk_alphas, "comma-separated dilations (nonzero)");
  v_ker->add_option("--range", vk_range, "check (r, s) in [-range, range]^2");
  v_ker->add_option("--order", vk_order, "Gauss-Legendre order");
  v_ker->add_option("--tol", vk_tol, "absolute tolerance");
  add_common(v_ker, false);

  std::string vt_symbol = "sign:2", vt_f = "delta:0", vt_g = "delta:0", vt_u = "0,0.25,-0.5";
  long vt_k = 8, vt_window = 32, vt_sample_radius = 1024;
  int vt_order = 32, vt_refine = 6;
  double vt_tol = 1e-5, vt_qtol = 1e-9;
  auto* v_tr = verify->add_subcommand("transfer", "continuous/discrete transference relation");
  v_tr->add_option("--symbol", vt_symbol, "symbol literal");
  v_tr->add_option("--k", vt_k, "lattice refinement k (k >= 4R)");
  v_tr->add_option("--u", vt_u, "comma-separated lattice offsets");
  v_tr->add_option("--f", vt_f, "coefficients of f (raised-cosine extension)");
  v_tr->add_option("--g", vt_g, "coefficients of g (raised-cosine extension)");
  v_tr->add_option("--window", vt_window, "discrete output window half-width");
  v_tr->add_option("--sample-radius", vt_sample_radius, "restriction truncation radius");
  v_tr->add_option("--order", vt_order, "Gauss-Legendre order");
  v_tr->add_option("--max-refine", vt_refine, "panel-doubling passes");
  v_tr->add_option("--quad-tol", vt_qtol, "quadrature refinement tolerance");
  v_tr->add_option("--tol", vt_tol, "sup-norm tolerance");
  add_common(v_tr, false);

  double ve_R = 0.2, ve_p = 2.0, ve_per = 10.0, ve_cross = 100.0;
  std::string ve_q = "2";
  auto* v_eq = verify->add_subcommand("equivalence", "restriction/extension norm equivalence");
  v_eq->add_option("--R", ve_R, "band radius, 0 < R < 1/2");
  v_eq->add_option("--p", ve_p, "Lorentz exponent p");
  v_eq->add_option("--q", ve_q, "Lorentz exponent q (number or 'inf')");
  v_eq->add_option("--per-trial-bound", ve_per, "per-trial spread bound");
  v_eq->add_option("--cross-bound", ve_cross, "cross-trial spread bound");
  add_common(v_eq, true);

  std::string vu_symbol = "sign:2", vu_t = "0.25,1,4,16";
  double vu_inv_p = 0.0;
  int vu_order = 32;
  auto* v_un = verify->add_subcommand("uniformity", "norm estimates across dilations t");
  v_un->add_option("--symbol", vu_symbol, "symbol literal");
  v_un->add_option("--t", vu_t, "comma-separated dilations");
  v_un->add_option("--inv-p", vu_inv_p, "dilation exponent 1/p >= 0");
  v_un->add_option("--order", vu_order, "Gauss-Legendre order");
  add_common(v_un, true);

  long vp_alpha = 2;
  double vp_p1 = 4.0 / 3.0, vp_p2 = 4.0 / 3.0;
  auto* v_ep = verify->add_subcommand("endpoint", "weak-type endpoint boundedness probe");
  v_ep->add_option("--alpha", vp_alpha, "integer dilation alpha (not 0 or 1)");
  v_ep->add_option("--p1", vp_p1, "first exponent, 1 < p1 <= 2");
  v_ep->add_option("--p2", vp_p2, "second exponent, 1/p1 + 1/p2 = 3/2");
  add_common(v_ep, true);

  // ---- symbol-grid ----------------------------------------------------------
  auto* sgrid = app.add_subcommand("symbol-grid", "sample a symbol onto an N x N CSV grid");
  std::string sg_symbol = "sign:2", sg_out = "grid.csv";
  int sg_n = 32;
  sgrid->add_option("--symbol", sg_symbol, "symbol literal");
  sgrid->add_option("--n", sg_n, "cells per axis (>= 2)");
  sgrid->add_option("--out", sg_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (norm->parsed()) {
      if (norm_values.empty() == norm_file.empty())
        throw std::invalid_argument("norm needs exactly one of --values or --file");
      const FiniteSequence s = norm_values.empty()
                                   ? read_sequence_file(norm_file, norm_offset)
                                   : [&] {
                                       FiniteSequence v = parse_sequence(norm_values);
                                       return norm_offset != 0 ? v.shifted(norm_offset) : v;
                                     }();
      const double p = parse_double(norm_p);
      const double q = norm_q.empty() ? p : parse_double(norm_q);
      std::printf("%.17g\n", bmt::lorentz::norm_pq(s, bmt::lorentz::Exponents(p, q)));
      return 0;
    }

    if (apply->parsed()) {
      const FiniteSequence a = parse_sequence(ap_a);
      const FiniteSequence b = parse_sequence(ap_b);
      if (ap_bht->parsed()) {
        const FiniteSequence r = bmt::operators::bht_discrete(a, b, ap_alpha);
        print_sequence(r);
        if (!ap_out.empty()) write_sequence_json(r, ap_out);
        return 0;
      }
      if (ap_hil->parsed()) {
        if (!ap_hil->count("--window")) ap_window = 256;
        const auto r = bmt::operators::hilbert_discrete(a, ap_window);
        std::printf("# tail_bound %.17g\n", r.tail_bound);
        print_sequence(r.seq);
        if (!ap_out.empty()) write_sequence_json(r.seq, ap_out, "tail_bound", r.tail_bound);
        return 0;
      }
      const auto pm = bmt::symbols::periodize_symbol(parse_symbol(ap_symbol), ap_t, ap_inv_p);
      if (ap_dmk->parsed()) {
        const auto K = [&pm, ap_order, ap_tol](long r, long s) {
          return bmt::symbols::kernel_coeff(pm, r, s, ap_order, ap_tol);
        };
        const FiniteSequence r =
            bmt::operators::apply_Dm_kernel(a, b, K, -ap_window, ap_window);
        print_sequence(r);
        if (!ap_out.empty()) write_sequence_json(r, ap_out);
        return 0;
      }
      bmt::QuadratureSpec spec;
      spec.order = ap_order;
      spec.max_refine = ap_refine;
      spec.tol = ap_tol;
      spec.split = !ap_no_split;
      const auto r =
          bmt::operators::apply_Dm_quadrature(a, b, pm, -ap_window, ap_window, spec);
      std::printf("# error_estimate %.17g\n", r.error_estimate);
      print_sequence(r.seq);
      if (!ap_out.empty())
        write_sequence_json(r.seq, ap_out, "error_estimate", r.error_estimate);
      return 0;
    }

    if (verify->parsed()) {
      bmt::harness::TrialConfig cfg;
      cfg.seed = v_seed;
      cfg.trials = v_trials;
      cfg.support_radius = v_radius;
      cfg.law = parse_law(v_law);
      cfg.sparse_k = v_sparse_k;
      bmt::harness::Report rep;
      if (v_dec->parsed()) {
        rep = bmt::harness::verify_decomposition(cfg, parse_list_long(vd_alphas), vd_tol);
      } else if (v_ker->parsed()) {
        rep = bmt::harness::verify_kernel_oracle(parse_list_double(vk_alphas), vk_range,
                                                 vk_order, vk_tol);
      } else if (v_tr->parsed()) {
        const bmt::Prototype proto = bmt::Prototype::raised_cosine(1.0);
        const auto f = bmt::extend_sequence(parse_sequence(vt_f), proto);
        const auto g = bmt::extend_sequence(parse_sequence(vt_g), proto);
        bmt::QuadratureSpec spec;
        spec.order = vt_order;
        spec.max_refine = vt_refine;
        spec.tol = vt_qtol;
        rep = bmt::harness::verify_transfer_relation(f, g, parse_symbol(vt_symbol), vt_k,
                                                     parse_list_double(vt_u), spec, vt_window,
                                                     vt_sample_radius, vt_tol);
      } else if (v_eq->parsed()) {
        const bmt::lorentz::Exponents e(ve_p, parse_double(ve_q));
        rep = bmt::harness::verify_restriction_extension(cfg, ve_R, e, ve_per, ve_cross);
      } else if (v_un->parsed()) {
        bmt::QuadratureSpec spec;
        spec.order = vu_order;
        rep = bmt::harness::uniformity_sweep(parse_symbol(vu_symbol), vu_inv_p,
                                             parse_list_double(vu_t), cfg, spec);
      } else {
        rep = bmt::harness::weak_endpoint_probe(vp_alpha, vp_p1, vp_p2, cfg);
      }
      return finish_report(rep, v_out, v_csv, v_no_meta);
    }

    // symbol-grid: sample onto cell centers and write the interchange CSV.
    if (sg_n < 2) throw std::invalid_argument("symbol-grid: --n must be >= 2");
    const SymbolDescriptor m = parse_symbol(sg_symbol);
    std::vector<cplx> samples;
    samples.reserve(static_cast<size_t>(sg_n) * static_cast<size_t>(sg_n));
    for (int i = 0; i < sg_n; ++i)
      for (int j = 0; j < sg_n; ++j)
        samples.push_back(m.eval(bmt::symbols::grid_coord(i, sg_n),
                                 bmt::symbols::grid_coord(j, sg_n)));
    bmt::symbols::write_grid_csv(SymbolDescriptor::grid(sg_n, std::move(samples)), sg_out);
    std::printf("wrote %dx%d grid to %s\n", sg_n, sg_n, sg_out.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
