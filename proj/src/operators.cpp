#include "bmt/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bmt/summation.hpp"

namespace bmt::operators {

using symbols::SymbolForm;

cplx kernel_c_alpha(double alpha, long r, long s) {
  if (alpha == 0.0) throw std::domain_error("kernel_c_alpha: alpha must be nonzero");
  if (std::abs(alpha) > 1.0) return signum(alpha) * kernel_c_alpha(1.0 / alpha, s, r);
  if (r == 0 && s == 0) return {0.0, 0.0};
  if (r != 0) {
    const double num = sinc(-alpha * static_cast<double>(r) + static_cast<double>(s)) -
                       (s == 0 ? parity(r) : 0.0);
    return {0.0, num / (pi * static_cast<double>(r))};
  }
  return {0.0, -alpha * parity(s) / (pi * static_cast<double>(s))};
}

KernelCAlpha::KernelCAlpha(double a) : alpha(a) {
  if (alpha == 0.0) throw std::domain_error("KernelCAlpha: alpha must be nonzero");
}

std::vector<cplx> apply_Dm_kernel_at(const FiniteSequence& a, const FiniteSequence& b,
                                     const KernelFn& K, const std::vector<long>& indices) {
  std::vector<cplx> out(indices.size());
  if (a.empty() || b.empty()) return out;
  parallel_for(static_cast<long>(indices.size()), [&](long slot) {
    const long n = indices[static_cast<size_t>(slot)];
    NeumaierSumC s;
    for (long k1 = a.lo(); k1 <= a.hi(); ++k1) {
      const cplx av = a.at(k1);
      if (av == cplx{}) continue;
      for (long k2 = b.lo(); k2 <= b.hi(); ++k2) {
        const cplx bv = b.at(k2);
        if (bv == cplx{}) continue;
        s.add(av * bv * K(n - k1, n - k2));
      }
    }
    out[static_cast<size_t>(slot)] = s.value();
  });
  return out;
}

FiniteSequence apply_Dm_kernel(const FiniteSequence& a, const FiniteSequence& b,
                               const KernelFn& K, long n_lo, long n_hi) {
  if (n_hi < n_lo) throw std::domain_error("apply_Dm_kernel: empty output window");
  std::vector<long> idx(static_cast<size_t>(n_hi - n_lo + 1));
  std::iota(idx.begin(), idx.end(), n_lo);
  return FiniteSequence(n_lo, apply_Dm_kernel_at(a, b, K, idx));
}

cplx hilbert_at(const FiniteSequence& a, long n) {
  if (a.empty()) return {};
  NeumaierSumC s;
  for (long j = a.lo(); j <= a.hi(); ++j) {
    if (j == n) continue;
    const cplx v = a.at(j);
    if (v == cplx{}) continue;
    s.add(v / static_cast<double>(n - j));
  }
  return s.value() / pi;
}

TailBounded hilbert_discrete(const FiniteSequence& a, long w_out) {
  if (w_out < 1) throw std::domain_error("hilbert_discrete: window pad must be >= 1");
  if (a.empty()) return {FiniteSequence{}, 0.0};
  const long lo = a.lo() - w_out;
  std::vector<cplx> vals(static_cast<size_t>(a.hi() + w_out - lo + 1));
  parallel_for(static_cast<long>(vals.size()),
               [&](long i) { vals[static_cast<size_t>(i)] = hilbert_at(a, lo + i); });
  return {FiniteSequence(lo, std::move(vals)), a.l1() / (pi * static_cast<double>(w_out))};
}

FiniteSequence bht_discrete(const FiniteSequence& a, const FiniteSequence& b, long alpha) {
  if (alpha == 0) throw std::domain_error("bht_discrete: alpha must be nonzero");
  if (alpha == 1)
    throw std::domain_error(
        "bht_discrete: alpha = 1 reduces to the Hilbert transform of the entrywise "
        "product, whose support is infinite; use hilbert_discrete on the product");
  FiniteSequence::Builder acc;
  if (a.empty() || b.empty()) return acc.build();
  // a_{n-k} b_{n-alpha k} != 0 forces n - k = i in supp(a), n - alpha k = j in
  // supp(b); then (alpha - 1) k = i - j, so only divisible corner offsets land.
  for (long i = a.lo(); i <= a.hi(); ++i) {
    const cplx av = a.at(i);
    if (av == cplx{}) continue;
    for (long j = b.lo(); j <= b.hi(); ++j) {
      const cplx bv = b.at(j);
      if (bv == cplx{}) continue;
      const long num = i - j;
      if (num % (alpha - 1) != 0) continue;
      const long k = num / (alpha - 1);
      if (k == 0) continue;
      acc.add(i + k, av * bv / (pi * static_cast<double>(k)));
    }
  }
  return acc.build();
}

FiniteSequence bar_sequence(const FiniteSequence& a, long alpha) {
  if (alpha == 0) throw std::domain_error("bar_sequence: alpha must be nonzero");
  FiniteSequence::Builder acc;
  if (a.empty()) return acc.build();
  for (long m = a.lo(); m <= a.hi(); ++m) acc.add(alpha * m, a.at(m));
  return acc.build();
}

FiniteSequence tilde_sequence(const FiniteSequence& a, long alpha) {
  if (alpha == 0) throw std::domain_error("tilde_sequence: alpha must be nonzero");
  FiniteSequence::Builder acc;
  if (a.empty()) return acc.build();
  for (long m = a.lo(); m <= a.hi(); ++m) acc.add(alpha * m, parity(alpha * m) * a.at(m));
  return acc.build();
}

FiniteSequence bht_decomposition_rhs(const FiniteSequence& a, const FiniteSequence& b,
                                     long alpha, long pad) {
  if (alpha == 0 || alpha == 1)
    throw std::domain_error("bht_decomposition_rhs: alpha must be an integer outside {0, 1}");
  if (pad < 0) throw std::domain_error("bht_decomposition_rhs: pad must be >= 0");
  if (a.empty() || b.empty()) return {};

  // Window: hull of the exact BHT support corners and of both inputs, padded.
  const double ad = static_cast<double>(alpha);
  double lo_r = std::numeric_limits<double>::infinity();
  double hi_r = -std::numeric_limits<double>::infinity();
  for (long i : {a.lo(), a.hi()})
    for (long j : {b.lo(), b.hi()}) {
      const double nn = (ad * static_cast<double>(i) - static_cast<double>(j)) / (ad - 1.0);
      lo_r = std::min(lo_r, nn);
      hi_r = std::max(hi_r, nn);
    }
  const long lo = std::min({static_cast<long>(std::floor(lo_r)), a.lo(), b.lo()}) - pad;
  const long hi = std::max({static_cast<long>(std::ceil(hi_r)), a.hi(), b.hi()}) + pad;
  const long count = hi - lo + 1;

  const FiniteSequence bar_a = bar_sequence(a, alpha);
  const FiniteSequence bar_b = bar_sequence(b, alpha);
  const FiniteSequence til_a = tilde_sequence(a, alpha);
  const FiniteSequence til_b = tilde_sequence(b, alpha);

  const KernelFn K = [alpha](long r, long s) {
    return cplx(0.0, -1.0) * kernel_c_alpha(static_cast<double>(alpha), r, s);
  };
  std::vector<long> d_idx(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) d_idx[static_cast<size_t>(i)] = alpha * (lo + i);
  const std::vector<cplx> dvals = apply_Dm_kernel_at(bar_a, bar_b, K, d_idx);

  const double a2 = ad * ad;
  const double sg = signum(ad);
  std::vector<cplx> vals(static_cast<size_t>(count));
  parallel_for(count, [&](long i) {
    const long n = lo + i;
    const long an = alpha * n;
    cplx v = sg * a2 * dvals[static_cast<size_t>(i)];
    const cplx ta = til_a.at(an);
    const cplx tb = til_b.at(an);
    if (ta != cplx{}) v += a2 * ta * hilbert_at(til_b, an);
    if (tb != cplx{}) v += ad * tb * hilbert_at(til_a, an);
    vals[static_cast<size_t>(i)] = v;
  });
  return FiniteSequence(lo, std::move(vals));
}

namespace {

// Largest coefficient-symbol frequency: P(xi/t) oscillates at max|k|/t cycles.
double coeff_span(const FiniteSequence& s) {
  if (s.empty()) return 0.0;
  return static_cast<double>(std::max(std::abs(s.lo()), std::abs(s.hi())));
}

// max |n - k| over the output window and the support of s.
double max_freq(const FiniteSequence& s, long n_lo, long n_hi) {
  if (s.empty()) return 0.0;
  long m = 0;
  for (long n : {n_lo, n_hi})
    for (long k : {s.lo(), s.hi()}) m = std::max(m, std::abs(n - k));
  return static_cast<double>(m);
}

// P(xi) = sum_k s_k e^{-2 pi i k xi} at each node, phase recurrence per node.
std::vector<cplx> poly_at_nodes(const FiniteSequence& s, const std::vector<double>& xs) {
  std::vector<cplx> out(xs.size());
  parallel_for(static_cast<long>(xs.size()), [&](long d) {
    const double xi = xs[static_cast<size_t>(d)];
    cplx ph = unit_phase(-static_cast<double>(s.lo()) * xi);
    const cplx step = unit_phase(-xi);
    NeumaierSumC acc;
    for (long k = s.lo(); k <= s.hi(); ++k) {
      acc.add(s.at(k) * ph);
      ph *= step;
    }
    out[static_cast<size_t>(d)] = acc.value();
  });
  return out;
}

struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes over the segments of seg_bounds, with per-segment panel
// counts sized to `cycles_for` oscillation and scaled by the refinement mult.
template <class CyclesFn>
NodeSet build_nodes(const std::vector<double>& seg_bounds, CyclesFn&& cycles_for, int order,
                    long mult) {
  const GLRule& rule = gauss_legendre(order);
  NodeSet ns;
  for (size_t s = 0; s + 1 < seg_bounds.size(); ++s) {
    const double x0 = seg_bounds[s], x1 = seg_bounds[s + 1];
    if (!(x1 > x0)) continue;
    const long pan = panels_for(cycles_for(x0, x1), order) * mult;
    for (long p = 0; p < pan; ++p) {
      const double a0 = x0 + (x1 - x0) * static_cast<double>(p) / static_cast<double>(pan);
      const double a1 = x0 + (x1 - x0) * static_cast<double>(p + 1) / static_cast<double>(pan);
      const double mid = 0.5 * (a0 + a1), half = 0.5 * (a1 - a0);
      for (int i = 0; i < order; ++i) {
        ns.x.push_back(mid + half * rule.nodes[i]);
        ns.w.push_back(half * rule.weights[i]);
      }
    }
  }
  return ns;
}

// I(n) = int_{-1/2}^{1/2} P(xi) [sign(xi)] e^{2 pi i (n + shift) xi} d xi.
std::vector<cplx> axis_transform(const FiniteSequence& s, double shift, bool sign_weight,
                                 long n_lo, long n_hi, int order, long mult) {
  std::vector<double> br;
  if (sign_weight) br.push_back(0.0);
  const auto seg = clip_breakpoints(std::move(br), -0.5, 0.5);
  const double f = max_freq(s, n_lo, n_hi) + std::abs(shift);
  NodeSet ns = build_nodes(
      seg, [f](double x0, double x1) { return f * (x1 - x0); }, order, mult);
  const std::vector<cplx> pv = poly_at_nodes(s, ns.x);
  const long n_out = n_hi - n_lo + 1;
  std::vector<cplx> out(static_cast<size_t>(n_out));
  parallel_for(n_out, [&](long i) {
    const double nn = static_cast<double>(n_lo + i) + shift;
    NeumaierSumC acc;
    for (size_t d = 0; d < ns.x.size(); ++d) {
      const double wgt = ns.w[d] * (sign_weight ? signum(ns.x[d]) : 1.0);
      acc.add(wgt * pv[d] * unit_phase(nn * ns.x[d]));
    }
    out[static_cast<size_t>(i)] = acc.value();
  });
  return out;
}

} // namespace

DmQuadResult apply_Dm_quadrature(const FiniteSequence& a, const FiniteSequence& b,
                                 const PeriodizedSymbol& pm, long n_lo, long n_hi,
                                 const QuadratureSpec& spec) {
  if (n_hi < n_lo) throw std::domain_error("apply_Dm_quadrature: empty output window");
  if (spec.order < 2) throw std::domain_error("apply_Dm_quadrature: order must be >= 2");
  if (a.empty() || b.empty()) return {FiniteSequence{}, 0.0};
  const long n_out = n_hi - n_lo + 1;

  const SymbolDescriptor& base = pm.base();
  const double scale = pm.scale_factor();
  const bool semi = spec.split && base.form() == SymbolForm::SIGN_LINE && base.alpha() != 0.0;
  const bool separable = base.form() == SymbolForm::CONSTANT ||
                         base.form() == SymbolForm::PHASE ||
                         (spec.split && base.form() == SymbolForm::SIGN_LINE);

  const std::vector<cplx>& bv = b.values();
  const long blo = b.lo();

  // Sign-line path: the eta integral against sign(xi + alpha eta) is evaluated
  // in closed form.  With F(e; n) = int_{-1/2}^{e} Q(eta) e^{2 pi i n eta},
  //   int Q sign e^{2 pi i n eta} = sign(alpha) (B(n) - 2 G(eta*; n)),
  //   B(n)    = sum_{l != n} b_l (-1)^{n-l} / (pi i (n - l)),
  //   G(e; n) = b_n e + e^{2 pi i n e} S(e; n) / (2 pi i),
  //   S(e; n) = sum_{l != n} b_l e^{-2 pi i l e} / (n - l),
  // with eta* = clamp(-xi/alpha, [-1/2, 1/2]); only the xi integral is numeric.
  std::vector<cplx> Bn;
  if (semi) {
    Bn.resize(static_cast<size_t>(n_out));
    parallel_for(n_out, [&](long i) {
      const long n = n_lo + i;
      NeumaierSumC s;
      for (size_t li = 0; li < bv.size(); ++li) {
        const long l = blo + static_cast<long>(li);
        if (l == n) continue;
        s.add(bv[li] * (parity(n - l) / static_cast<double>(n - l)));
      }
      Bn[static_cast<size_t>(i)] = s.value() * cplx(0.0, -1.0 / pi);
    });
  }

  const auto semi_level = [&](long mult) -> std::vector<cplx> {
    const double alpha = base.alpha();
    const double h = 0.5 * std::abs(alpha);
    std::vector<double> xb;
    if (h < 0.5) {
      xb.push_back(-h);
      xb.push_back(h);
    }
    const auto seg = clip_breakpoints(std::move(xb), -0.5, 0.5);
    const double fa = max_freq(a, n_lo, n_hi);
    const double fb = max_freq(b, n_lo, n_hi) / std::abs(alpha);
    NodeSet ns = build_nodes(
        seg,
        [&](double x0, double x1) {
          // eta* moves only while |xi| < |alpha|/2; clamped segments oscillate
          // at the P e^{2 pi i n xi} rate alone.
          const bool middle = x0 >= -h - 1e-14 && x1 <= h + 1e-14;
          return (fa + (middle ? fb : 0.0)) * (x1 - x0);
        },
        spec.order, mult);
    const std::vector<cplx> pv = poly_at_nodes(a, ns.x);
    const size_t n_nodes = ns.x.size();
    std::vector<double> eta_star(n_nodes);
    for (size_t d = 0; d < n_nodes; ++d)
      eta_star[d] = std::clamp(-ns.x[d] / alpha, -0.5, 0.5);

    std::vector<cplx> out(static_cast<size_t>(n_out));
    const long workers = std::min<long>(n_out, thread_count());
    const long chunk = (n_out + workers - 1) / workers;
    parallel_for(workers, [&](long c) {
      const long i0 = c * chunk, i1 = std::min(n_out, i0 + chunk);
      if (i0 >= i1) return;
      std::vector<NeumaierSumC> acc(static_cast<size_t>(i1 - i0));
      std::vector<cplx> beta(bv.size());
      for (size_t d = 0; d < n_nodes; ++d) {
        const double es = eta_star[d];
        cplx ph = unit_phase(-static_cast<double>(blo) * es);
        const cplx step = unit_phase(-es);
        for (size_t li = 0; li < bv.size(); ++li) {
          beta[li] = bv[li] * ph;
          ph *= step;
        }
        const cplx base_d = ns.w[d] * pv[d];
        for (long i = i0; i < i1; ++i) {
          const long n = n_lo + i;
          cplx s{0.0, 0.0};
          for (size_t li = 0; li < bv.size(); ++li) {
            const long l = blo + static_cast<long>(li);
            if (l == n) continue;
            s += beta[li] / static_cast<double>(n - l);
          }
          const cplx G = b.at(n) * es +
                         unit_phase(static_cast<double>(n) * es) * s * cplx(0.0, -0.5 / pi);
          const cplx inner = Bn[static_cast<size_t>(i)] - 2.0 * G;
          acc[static_cast<size_t>(i - i0)].add(
              base_d * unit_phase(static_cast<double>(n) * ns.x[d]) * inner);
        }
      }
      const cplx cfac = base.amplitude() * scale * signum(alpha);
      for (long i = i0; i < i1; ++i)
        out[static_cast<size_t>(i)] = cfac * acc[static_cast<size_t>(i - i0)].value();
    });
    return out;
  };

  const auto separable_level = [&](long mult) -> std::vector<cplx> {
    double shift_a = 0.0, shift_b = 0.0;
    bool sgn = false;
    cplx c0 = scale;
    switch (base.form()) {
      case SymbolForm::CONSTANT:
        c0 *= base.constant_value();
        break;
      case SymbolForm::PHASE:
        shift_a = pm.t() * static_cast<double>(base.j1());
        shift_b = pm.t() * static_cast<double>(base.j2());
        break;
      default: // SIGN_LINE with alpha == 0: m = A sign(xi)
        sgn = true;
        c0 *= base.amplitude();
        break;
    }
    const auto va = axis_transform(a, shift_a, sgn, n_lo, n_hi, spec.order, mult);
    const auto vb = axis_transform(b, shift_b, false, n_lo, n_hi, spec.order, mult);
    std::vector<cplx> out(static_cast<size_t>(n_out));
    for (long i = 0; i < n_out; ++i)
      out[static_cast<size_t>(i)] = c0 * va[static_cast<size_t>(i)] * vb[static_cast<size_t>(i)];
    return out;
  };

  const auto tensor_level = [&](long mult) -> std::vector<cplx> {
    std::vector<double> xb, eb;
    double extra_xi = 0.0, extra_eta = 0.0;
    if (base.form() == SymbolForm::GRID && spec.split) {
      for (int i = 0; i < base.grid_n(); ++i) {
        const double c = symbols::grid_coord(i, base.grid_n()) / pm.t();
        if (std::abs(c) < 0.5) {
          xb.push_back(c);
          eb.push_back(c);
        }
      }
    }
    if (base.form() == SymbolForm::PHASE) {
      extra_xi = pm.t() * std::abs(static_cast<double>(base.j1()));
      extra_eta = pm.t() * std::abs(static_cast<double>(base.j2()));
    }
    const double fx = max_freq(a, n_lo, n_hi) + extra_xi;
    const double fe = max_freq(b, n_lo, n_hi) + extra_eta;
    NodeSet nx = build_nodes(
        clip_breakpoints(std::move(xb), -0.5, 0.5),
        [fx](double x0, double x1) { return fx * (x1 - x0); }, spec.order, mult);
    NodeSet ne = build_nodes(
        clip_breakpoints(std::move(eb), -0.5, 0.5),
        [fe](double x0, double x1) { return fe * (x1 - x0); }, spec.order, mult);
    const std::vector<cplx> pvx = poly_at_nodes(a, nx.x);
    const std::vector<cplx> pve = poly_at_nodes(b, ne.x);
    const size_t dx = nx.x.size(), de = ne.x.size();
    std::vector<cplx> cell(dx * de);
    parallel_for(static_cast<long>(dx), [&](long d) {
      for (size_t e = 0; e < de; ++e)
        cell[static_cast<size_t>(d) * de + e] = pm.eval(nx.x[static_cast<size_t>(d)], ne.x[e]);
    });
    std::vector<cplx> out(static_cast<size_t>(n_out));
    parallel_for(n_out, [&](long i) {
      const double n = static_cast<double>(n_lo + i);
      NeumaierSumC acc;
      for (size_t d = 0; d < dx; ++d) {
        NeumaierSumC row;
        for (size_t e = 0; e < de; ++e)
          row.add(ne.w[e] * pve[e] * cell[d * de + e] * unit_phase(n * ne.x[e]));
        acc.add(nx.w[d] * pvx[d] * unit_phase(n * nx.x[d]) * row.value());
      }
      out[static_cast<size_t>(i)] = acc.value();
    });
    return out;
  };

  const auto level = [&](int r) -> std::vector<cplx> {
    const long mult = 1L << r;
    if (semi) return semi_level(mult);
    if (separable) return separable_level(mult);
    return tensor_level(mult);
  };

  std::vector<cplx> prev = level(0);
  double est = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= spec.max_refine; ++r) {
    std::vector<cplx> cur = level(r);
    est = 0.0;
    for (long i = 0; i < n_out; ++i)
      est = std::max(est, std::abs(cur[static_cast<size_t>(i)] - prev[static_cast<size_t>(i)]));
    if (est <= spec.tol) return {FiniteSequence(n_lo, std::move(cur)), est};
    prev = std::move(cur);
  }
  throw quadrature_error("apply_Dm_quadrature did not converge", est);
}

CmResult apply_Cm(const BandLimitedFunction& f, const BandLimitedFunction& g,
                  const SymbolDescriptor& m, const std::vector<double>& x_grid,
                  const QuadratureSpec& spec) {
  if (spec.order < 2) throw std::domain_error("apply_Cm: order must be >= 2");
  CmResult res;
  res.values.assign(x_grid.size(), cplx{});
  if (x_grid.empty() || f.coeffs().empty() || g.coeffs().empty()) return res;

  const double rf = f.fourier_radius(), rg = g.fourier_radius();
  std::vector<double> xb = f.fourier_breakpoints();
  std::vector<double> eb0 = g.fourier_breakpoints();
  const bool line = m.form() == SymbolForm::SIGN_LINE && spec.split;
  const double al = m.alpha();
  if (line) {
    if (al == 0.0) {
      xb.push_back(0.0);
    } else {
      // The line eta = -xi/alpha crosses each ghat kink; the integrated inner
      // integral has matching xi kinks at their images.
      for (double be : g.fourier_breakpoints()) xb.push_back(-al * be);
    }
  }
  if (m.form() == SymbolForm::GRID) {
    for (int i = 0; i < m.grid_n(); ++i) {
      xb.push_back(symbols::grid_coord(i, m.grid_n()));
      eb0.push_back(symbols::grid_coord(i, m.grid_n()));
    }
  }
  const auto xseg = clip_breakpoints(std::move(xb), -rf, rf);

  double xmax = 0.0;
  for (double x : x_grid) xmax = std::max(xmax, std::abs(x));
  const double fx = xmax + coeff_span(f.coeffs()) / f.dilation();
  const double fe = xmax + coeff_span(g.coeffs()) / g.dilation();

  const auto level = [&](int r) -> std::vector<cplx> {
    const long mult = 1L << r;
    // x-independent cache: amplitude and total frequency per node pair.
    std::vector<cplx> amp;
    std::vector<double> freq;
    NodeSet nx = build_nodes(
        xseg, [fx](double a0, double a1) { return fx * (a1 - a0); }, spec.order, mult);
    for (size_t d = 0; d < nx.x.size(); ++d) {
      const double xi = nx.x[d];
      const cplx fv = nx.w[d] * f.fourier(xi);
      std::vector<double> eb = eb0;
      if (line && al != 0.0) {
        const double estar = -xi / al;
        if (std::abs(estar) < rg) eb.push_back(estar);
      }
      NodeSet ne = build_nodes(
          clip_breakpoints(std::move(eb), -rg, rg),
          [fe](double a0, double a1) { return fe * (a1 - a0); }, spec.order, mult);
      for (size_t e = 0; e < ne.x.size(); ++e) {
        const double eta = ne.x[e];
        amp.push_back(fv * ne.w[e] * g.fourier(eta) * m.eval(xi, eta));
        freq.push_back(xi + eta);
      }
    }
    std::vector<cplx> vals(x_grid.size());
    parallel_for(static_cast<long>(x_grid.size()), [&](long i) {
      const double x = x_grid[static_cast<size_t>(i)];
      NeumaierSumC acc;
      for (size_t p = 0; p < amp.size(); ++p) acc.add(amp[p] * unit_phase(freq[p] * x));
      vals[static_cast<size_t>(i)] = acc.value();
    });
    return vals;
  };

  std::vector<cplx> prev = level(0);
  double est = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= spec.max_refine; ++r) {
    std::vector<cplx> cur = level(r);
    est = 0.0;
    for (size_t i = 0; i < cur.size(); ++i) est = std::max(est, std::abs(cur[i] - prev[i]));
    if (est <= spec.tol) {
      res.values = std::move(cur);
      res.error_estimate = est;
      return res;
    }
    prev = std::move(cur);
  }
  throw quadrature_error("apply_Cm did not converge", est);
}

cplx fourier_of_Cm(const BandLimitedFunction& f, const BandLimitedFunction& g,
                   const SymbolDescriptor& m, double nu, const QuadratureSpec& spec) {
  if (spec.order < 2) throw std::domain_error("fourier_of_Cm: order must be >= 2");
  if (f.coeffs().empty() || g.coeffs().empty()) return {};
  const double rf = f.fourier_radius(), rg = g.fourier_radius();
  const double lo = std::max(-rf, nu - rg), hi = std::min(rf, nu + rg);
  if (!(lo < hi)) return {};

  std::vector<double> br = f.fourier_breakpoints();
  for (double be : g.fourier_breakpoints()) br.push_back(nu - be);
  if (m.form() == SymbolForm::SIGN_LINE && spec.split) {
    // sign(xi + alpha (nu - xi)) = sign((1 - alpha) xi + alpha nu): one root
    // unless alpha = 1, where the argument is constant.
    const double al = m.alpha();
    if (al != 1.0) br.push_back(al * nu / (al - 1.0));
  }
  if (m.form() == SymbolForm::GRID) {
    for (int i = 0; i < m.grid_n(); ++i) {
      br.push_back(symbols::grid_coord(i, m.grid_n()));
      br.push_back(nu - symbols::grid_coord(i, m.grid_n()));
    }
  }
  const auto seg = clip_breakpoints(std::move(br), lo, hi);
  const double cyc = coeff_span(f.coeffs()) / f.dilation() + coeff_span(g.coeffs()) / g.dilation();
  const GLRule& rule = gauss_legendre(spec.order);
  const auto integrand = [&](double xi) {
    return f.fourier(xi) * g.fourier(nu - xi) * m.eval(xi, nu - xi);
  };

  const auto level = [&](int r) -> cplx {
    NeumaierSumC s;
    for (size_t k = 0; k + 1 < seg.size(); ++k) {
      const long pan = panels_for(cyc * (seg[k + 1] - seg[k]), spec.order) * (1L << r);
      s.add(integrate_uniform(integrand, seg[k], seg[k + 1], pan, rule));
    }
    return s.value();
  };

  cplx prev = level(0);
  double est = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= spec.max_refine; ++r) {
    const cplx cur = level(r);
    est = std::abs(cur - prev);
    if (est <= spec.tol) return cur;
    prev = cur;
  }
  throw quadrature_error("fourier_of_Cm did not converge", est);
}

} // namespace bmt::operators
