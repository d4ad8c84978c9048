#include "bmt/symbols.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bmt/summation.hpp"

namespace bmt::symbols {

SymbolDescriptor SymbolDescriptor::sign_line(double alpha, cplx amplitude) {
  SymbolDescriptor d;
  d.form_ = SymbolForm::SIGN_LINE;
  d.alpha_ = alpha;
  d.amplitude_ = amplitude;
  return d;
}

SymbolDescriptor SymbolDescriptor::constant(cplx c) {
  SymbolDescriptor d;
  d.form_ = SymbolForm::CONSTANT;
  d.constant_ = c;
  return d;
}

SymbolDescriptor SymbolDescriptor::phase(long j1, long j2) {
  SymbolDescriptor d;
  d.form_ = SymbolForm::PHASE;
  d.j1_ = j1;
  d.j2_ = j2;
  return d;
}

SymbolDescriptor SymbolDescriptor::grid(int n, std::vector<cplx> samples) {
  if (n < 2) throw std::domain_error("grid symbol: resolution must be >= 2");
  if (static_cast<size_t>(n) * static_cast<size_t>(n) != samples.size())
    throw std::domain_error("grid symbol: expected N^2 samples");
  SymbolDescriptor d;
  d.form_ = SymbolForm::GRID;
  d.grid_n_ = n;
  d.grid_ = std::move(samples);
  return d;
}

cplx SymbolDescriptor::eval(double xi, double eta) const {
  switch (form_) {
    case SymbolForm::SIGN_LINE:
      return amplitude_ * signum(xi + alpha_ * eta);
    case SymbolForm::CONSTANT:
      return constant_;
    case SymbolForm::PHASE:
      return unit_phase(static_cast<double>(j1_) * xi + static_cast<double>(j2_) * eta);
    case SymbolForm::GRID: {
      if (std::abs(xi) > 0.5 + 1e-12 || std::abs(eta) > 0.5 + 1e-12)
        throw std::domain_error("grid symbol evaluated outside the cell");
      const int n = grid_n_;
      // Bilinear between cell centers, constant beyond the outermost centers.
      const auto locate = [n](double x, int& i0, double& frac) {
        const double u = (x + 0.5) * static_cast<double>(n) - 0.5;
        double fi = std::floor(u);
        if (fi < 0.0) fi = 0.0;
        if (fi > static_cast<double>(n - 2)) fi = static_cast<double>(n - 2);
        i0 = static_cast<int>(fi);
        frac = u - fi;
        if (frac < 0.0) frac = 0.0;
        if (frac > 1.0) frac = 1.0;
      };
      int i0, j0;
      double fx, fy;
      locate(xi, i0, fx);
      locate(eta, j0, fy);
      const auto s = [&](int i, int j) {
        return grid_[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
      };
      return (1.0 - fx) * ((1.0 - fy) * s(i0, j0) + fy * s(i0, j0 + 1)) +
             fx * ((1.0 - fy) * s(i0 + 1, j0) + fy * s(i0 + 1, j0 + 1));
    }
  }
  return {0.0, 0.0};
}

cplx eval_symbol(const SymbolDescriptor& m, double xi, double eta) {
  return m.eval(xi, eta);
}

PeriodizedSymbol::PeriodizedSymbol(SymbolDescriptor base, double t, double inv_p)
    : base_(std::move(base)), t_(t), inv_p_(inv_p) {
  if (!(t_ > 0.0)) throw std::domain_error("periodize_symbol: t must be positive");
  if (inv_p_ < 0.0) throw std::domain_error("periodize_symbol: 1/p must be >= 0");
}

double PeriodizedSymbol::scale_factor() const { return std::pow(t_, inv_p_); }

cplx PeriodizedSymbol::eval(double xi, double eta) const {
  // Periodic wrap onto the fundamental cell, then dilate.  Closed forms are
  // defined on all of R^2 and are read there; a grid symbol only carries the
  // cell, so its dilates read the 1-periodic extension.
  const double xw = xi - std::nearbyint(xi);
  const double yw = eta - std::nearbyint(eta);
  double tx = t_ * xw, ty = t_ * yw;
  if (base_.form() == SymbolForm::GRID) {
    tx -= std::nearbyint(tx);
    ty -= std::nearbyint(ty);
  }
  return scale_factor() * base_.eval(tx, ty);
}

PeriodizedSymbol periodize_symbol(const SymbolDescriptor& m, double t, double inv_p) {
  return PeriodizedSymbol(m, t, inv_p);
}

namespace {

// Breakpoints and extra oscillation the integrand inherits from the symbol.
struct SymbolGeometry {
  std::vector<double> xi_breaks;
  std::vector<double> eta_breaks; // xi-independent part
  bool line = false;              // inner split at eta* = -xi / (t alpha) ... see below
  double alpha = 0.0;
  double extra_xi_cycles = 0.0;
  double extra_eta_cycles = 0.0;
};

SymbolGeometry geometry(const PeriodizedSymbol& pm) {
  SymbolGeometry g;
  const SymbolDescriptor& b = pm.base();
  switch (b.form()) {
    case SymbolForm::SIGN_LINE:
      // sign(t xi + alpha t eta) = sign(xi + alpha eta) on the cell (t > 0):
      // the discontinuity line is dilation-invariant.
      g.alpha = b.alpha();
      if (g.alpha == 0.0) {
        g.xi_breaks = {0.0};
      } else {
        g.line = true;
        const double h = 0.5 * std::abs(g.alpha);
        g.xi_breaks = {-h, h};
      }
      break;
    case SymbolForm::CONSTANT:
      break;
    case SymbolForm::PHASE:
      g.extra_xi_cycles = pm.t() * std::abs(static_cast<double>(b.j1()));
      g.extra_eta_cycles = pm.t() * std::abs(static_cast<double>(b.j2()));
      break;
    case SymbolForm::GRID: {
      // Bilinear patches join at the sample centers (in base coordinates;
      // divide by t to land in cell coordinates).
      const int n = b.grid_n();
      for (int i = 0; i < n; ++i) {
        const double c = grid_coord(i, n) / pm.t();
        if (std::abs(c) < 0.5) {
          g.xi_breaks.push_back(c);
          g.eta_breaks.push_back(c);
        }
      }
      break;
    }
  }
  return g;
}

} // namespace

cplx kernel_coeff(const PeriodizedSymbol& pm, long n, long l, int order, double tol) {
  if (order < 2) throw std::domain_error("kernel_coeff: order must be >= 2");
  const GLRule& rule = gauss_legendre(order);
  const SymbolGeometry g = geometry(pm);
  const double fn = std::abs(static_cast<double>(n)) + g.extra_xi_cycles;
  const double fl = std::abs(static_cast<double>(l)) + g.extra_eta_cycles;

  const auto inner = [&](double xi, long mult) -> cplx {
    std::vector<double> eb = g.eta_breaks;
    if (g.line) {
      const double eta_star = -xi / g.alpha;
      if (std::abs(eta_star) < 0.5) eb.push_back(eta_star);
    }
    const std::vector<double> seg = clip_breakpoints(std::move(eb), -0.5, 0.5);
    NeumaierSumC s;
    for (size_t k = 0; k + 1 < seg.size(); ++k) {
      const long pan = panels_for(fl * (seg[k + 1] - seg[k]), order) * mult;
      s.add(integrate_uniform(
          [&](double eta) {
            return pm.eval(xi, eta) * unit_phase(static_cast<double>(l) * eta);
          },
          seg[k], seg[k + 1], pan, rule));
    }
    return s.value();
  };

  const auto attempt = [&](long mult) -> cplx {
    const std::vector<double> seg = clip_breakpoints(g.xi_breaks, -0.5, 0.5);
    NeumaierSumC s;
    for (size_t k = 0; k + 1 < seg.size(); ++k) {
      const long pan = panels_for(fn * (seg[k + 1] - seg[k]), order) * mult;
      s.add(integrate_uniform(
          [&](double xi) {
            return inner(xi, mult) * unit_phase(static_cast<double>(n) * xi);
          },
          seg[k], seg[k + 1], pan, rule));
    }
    return s.value();
  };

  constexpr int max_refine = 6;
  cplx prev = attempt(1);
  double residual = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= max_refine; ++r) {
    const cplx cur = attempt(1L << r);
    residual = std::abs(cur - prev);
    if (residual <= tol) return cur;
    prev = cur;
  }
  throw quadrature_error("kernel_coeff did not converge", residual);
}

void write_grid_csv(const SymbolDescriptor& m, const std::string& path) {
  if (m.form() != SymbolForm::GRID)
    throw std::domain_error("write_grid_csv: not a grid symbol");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_grid_csv: cannot open " + path);
  const int n = m.grid_n();
  out << n << "\n";
  char buf[160];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx v = m.grid_samples()[static_cast<size_t>(i) * n + j];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", grid_coord(i, n),
                    grid_coord(j, n), v.real(), v.imag());
      out << buf;
    }
  }
}

SymbolDescriptor load_grid_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_grid_csv: cannot open " + path);
  int n = 0;
  if (!(in >> n) || n < 2) throw std::runtime_error("load_grid_csv: bad header");
  std::string line;
  std::getline(in, line); // consume end of header line
  std::vector<cplx> samples;
  samples.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double fields[4] = {0, 0, 0, 0};
    std::string tok;
    for (double& f : fields) {
      if (!std::getline(row, tok, ',')) throw std::runtime_error("load_grid_csv: bad row");
      f = std::strtod(tok.c_str(), nullptr);
    }
    samples.emplace_back(fields[2], fields[3]);
  }
  return SymbolDescriptor::grid(n, std::move(samples));
}

} // namespace bmt::symbols
