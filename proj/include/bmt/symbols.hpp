#pragma once

#include <string>
#include <vector>

#include "bmt/quadrature.hpp"
#include "bmt/util.hpp"

namespace bmt::symbols {

enum class SymbolForm { SIGN_LINE, CONSTANT, PHASE, GRID };

// A bilinear symbol m(xi, eta): closed form or sampled grid.
//
//   SIGN_LINE(alpha, A)  m(xi, eta) = A sign(xi + alpha eta), sign(0) = 0
//   CONSTANT(c)          m = c
//   PHASE(j1, j2)        m = e^{2 pi i (j1 xi + j2 eta)}
//   GRID(N, samples)     bilinear interpolation of N x N samples at the cell
//                        centers of [-1/2, 1/2]^2 (approximate; no certified
//                        error).  Out-of-cell evaluation is a domain error.
//
// Every descriptor is locally bounded; SIGN_LINE carries its discontinuity
// line as metadata for the quadrature splitters.
class SymbolDescriptor {
 public:
  static SymbolDescriptor sign_line(double alpha, cplx amplitude = cplx{0.0, -1.0});
  static SymbolDescriptor constant(cplx c);
  static SymbolDescriptor phase(long j1, long j2);
  static SymbolDescriptor grid(int n, std::vector<cplx> samples);

  SymbolForm form() const { return form_; }
  double alpha() const { return alpha_; }
  cplx amplitude() const { return amplitude_; }
  cplx constant_value() const { return constant_; }
  long j1() const { return j1_; }
  long j2() const { return j2_; }
  int grid_n() const { return grid_n_; }
  const std::vector<cplx>& grid_samples() const { return grid_; }

  bool has_line() const { return form_ == SymbolForm::SIGN_LINE; }

  cplx eval(double xi, double eta) const;

 private:
  SymbolDescriptor() = default;
  SymbolForm form_ = SymbolForm::CONSTANT;
  double alpha_ = 0.0;
  cplx amplitude_{0.0, -1.0};
  cplx constant_{1.0, 0.0};
  long j1_ = 0, j2_ = 0;
  int grid_n_ = 0;
  std::vector<cplx> grid_;
};

cplx eval_symbol(const SymbolDescriptor& m, double xi, double eta);

// m~_{t,p}(xi, eta) = t^{1/p} m(t xi, t eta) on the cell [-1/2, 1/2]^2,
// extended 1-periodically in each variable.  inv_p = 0 drops the dilation
// factor entirely.
class PeriodizedSymbol {
 public:
  PeriodizedSymbol(SymbolDescriptor base, double t, double inv_p);

  cplx eval(double xi, double eta) const;

  const SymbolDescriptor& base() const { return base_; }
  double t() const { return t_; }
  double inv_p() const { return inv_p_; }
  double scale_factor() const; // t^{1/p}

 private:
  SymbolDescriptor base_;
  double t_;
  double inv_p_;
};

PeriodizedSymbol periodize_symbol(const SymbolDescriptor& m, double t, double inv_p);

// Fourier coefficient K(n, l) = int int_cell m~(xi, eta) e^{2 pi i (n xi + l eta)}.
// This is exactly the coefficient for which
//   D_m(a, b)(n) = sum_{k1, k2} a_{k1} b_{k2} K(n - k1, n - k2)
// reproduces the frequency-side definition of the discrete operator with the
// e^{-2 pi i k xi} coefficient-symbol convention.  For SIGN_LINE the cell is
// split along the line xi + alpha eta = 0 before tensor Gauss-Legendre
// quadrature; one panel-doubling pass supplies the error estimate, and a
// residual above tol after max refinement raises quadrature_error.
cplx kernel_coeff(const PeriodizedSymbol& m, long n, long l, int order = 32,
                  double tol = 1e-9);

// GRID CSV interchange: first line is N, then N^2 rows "xi,eta,re,im" in
// row-major order (xi outer).  Values are printed with 17 significant digits,
// so write/load round-trips bit-exactly.
void write_grid_csv(const SymbolDescriptor& m, const std::string& path);
SymbolDescriptor load_grid_csv(const std::string& path);

// Cell-center coordinate of index i in an N-point grid axis.
inline double grid_coord(int i, int n) {
  return -0.5 + (static_cast<double>(i) + 0.5) / static_cast<double>(n);
}

} // namespace bmt::symbols
