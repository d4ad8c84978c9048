#pragma once

#include <functional>
#include <vector>

#include "bmt/bandlimited.hpp"
#include "bmt/finite_sequence.hpp"
#include "bmt/quadrature.hpp"
#include "bmt/symbols.hpp"
#include "bmt/util.hpp"

namespace bmt::operators {

using symbols::PeriodizedSymbol;
using symbols::SymbolDescriptor;

// Fourier coefficient of the truncated sign symbol: closed form for |alpha| <= 1,
// served via the reflection c_alpha(r,s) = sign(alpha) c_{1/alpha}(s,r) otherwise.
cplx kernel_c_alpha(double alpha, long r, long s);

struct KernelCAlpha {
  double alpha;
  explicit KernelCAlpha(double a);
  cplx operator()(long r, long s) const { return kernel_c_alpha(alpha, r, s); }
};

using KernelFn = std::function<cplx(long, long)>;

// D(n) = sum_{k1,k2} a_{k1} b_{k2} K(n-k1, n-k2), exact double sum per entry.
FiniteSequence apply_Dm_kernel(const FiniteSequence& a, const FiniteSequence& b,
                               const KernelFn& K, long n_lo, long n_hi);
std::vector<cplx> apply_Dm_kernel_at(const FiniteSequence& a, const FiniteSequence& b,
                                     const KernelFn& K, const std::vector<long>& indices);

// A windowed sequence together with a certified sup bound on the omitted tail.
struct TailBounded {
  FiniteSequence seq;
  double tail_bound = 0.0;
};

// H(a)(n) = (1/pi) sum_{k != 0} a_{n-k}/k, evaluated exactly at one index.
cplx hilbert_at(const FiniteSequence& a, long n);
// Windowed to supp(a) padded by w_out; omitted entries bounded by l1(a)/(pi w_out).
TailBounded hilbert_discrete(const FiniteSequence& a, long w_out = 256);

// H_alpha(a,b)(n) = (1/pi) sum_{k != 0} a_{n-k} b_{n-alpha k}/k, exact finite sum.
// alpha = 1 collapses to the Hilbert transform of the entrywise product, whose
// support is infinite; it is rejected (use hilbert_discrete on the product).
FiniteSequence bht_discrete(const FiniteSequence& a, const FiniteSequence& b, long alpha);

// bar(a)_k = a_m when k = alpha m, zero otherwise; tilde adds the (-1)^n sign.
FiniteSequence bar_sequence(const FiniteSequence& a, long alpha);
FiniteSequence tilde_sequence(const FiniteSequence& a, long alpha);

// Assembles sign(alpha) alpha^2 D_alpha(bar a, bar b)(alpha n)
//         + alpha^2 tilde(a)_{alpha n} H(tilde b)(alpha n)
//         + alpha   tilde(b)_{alpha n} H(tilde a)(alpha n)
// with D_alpha on the exact kernel path (K = -i c_alpha) and the Hilbert factors
// evaluated exactly at the indices where they are needed.
FiniteSequence bht_decomposition_rhs(const FiniteSequence& a, const FiniteSequence& b,
                                     long alpha, long pad = 16);

struct DmQuadResult {
  FiniteSequence seq;
  double error_estimate = 0.0;
};

// Quadrature evaluation of D(n) = int int P(xi) Q(eta) m~(xi,eta) e^{2 pi i (xi+eta) n}
// over the cell, with discontinuity splitting for sign-line symbols (the eta
// integral there is evaluated in closed form; only the xi integral is numeric).
DmQuadResult apply_Dm_quadrature(const FiniteSequence& a, const FiniteSequence& b,
                                 const PeriodizedSymbol& pm, long n_lo, long n_hi,
                                 const QuadratureSpec& spec = {});

struct CmResult {
  std::vector<cplx> values;
  double error_estimate = 0.0;
};

// C_m(f,g)(x) = int int fhat(xi) ghat(eta) m(xi,eta) e^{2 pi i (xi+eta) x} over
// supp fhat x supp ghat, evaluated on x_grid.
CmResult apply_Cm(const BandLimitedFunction& f, const BandLimitedFunction& g,
                  const SymbolDescriptor& m, const std::vector<double>& x_grid,
                  const QuadratureSpec& spec = {});

// Fourier transform of C_m(f,g) at nu: int fhat(xi) ghat(nu-xi) m(xi, nu-xi) dxi.
cplx fourier_of_Cm(const BandLimitedFunction& f, const BandLimitedFunction& g,
                   const SymbolDescriptor& m, double nu, const QuadratureSpec& spec = {});

} // namespace bmt::operators
