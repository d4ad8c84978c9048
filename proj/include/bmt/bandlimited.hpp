#pragma once

#include <functional>

#include "bmt/finite_sequence.hpp"
#include "bmt/prototypes.hpp"

namespace bmt {

// f(x) = sum_n a_n phi(t x - n): a finite combination of integer translates of
// a band-limited prototype, optionally pre-dilated by t > 0.  Membership in
// E_R (Fourier support in [-R, R], R = t * prototype radius) is exact by
// construction -- grids cannot certify Fourier support, finite synthesis can.
class BandLimitedFunction {
 public:
  BandLimitedFunction(FiniteSequence coeffs, Prototype proto, double dilation = 1.0);

  cplx eval(double x) const;

  // f^(xi) = (1/t) P(xi/t) phi^(xi/t) with P(xi) = sum_n a_n e^{-2 pi i n xi}.
  cplx fourier(double xi) const;
  // P(xi) alone (the coefficient symbol, 1-periodic).
  cplx coeff_symbol(double xi) const;

  double fourier_radius() const { return dilation_ * proto_.fourier_radius(); }
  const FiniteSequence& coeffs() const { return coeffs_; }
  const Prototype& prototype() const { return proto_; }
  double dilation() const { return dilation_; }

  // g(x) = f(s x); Fourier radius scales by s.
  BandLimitedFunction dilated(double s) const;

  // Kinks of f^ (prototype breakpoints scaled by the dilation).
  std::vector<double> fourier_breakpoints() const;

 private:
  FiniteSequence coeffs_;
  Prototype proto_;
  double dilation_;
};

BandLimitedFunction extend_sequence(const FiniteSequence& a, const Prototype& proto);

// sum_n samples(n) phi(2R x - n): reconstruction from lattice samples at
// spacing (2R)^-1.  Exact for band radius b and reconstructor flat/support
// radii (F, S) when b <= 2R - S and F >= b -- the sinc prototype at the
// critical rate, or an oversampled raised cosine.  Truncation of `samples`
// leaves a tail bounded by sum_{|n| > N} |samples(n)| |phi(2Rx - n)|.
cplx shannon_reconstruct(const FiniteSequence& samples, double R, double x,
                         const Prototype& proto);

// a_u(n) = f(n + u) for u in [-1/2, 1/2]; other u are reduced mod 1 with the
// complementary integer shift applied to the index.  The window is grown until
// the envelope certifies |f(n+u)| < trunc_floor outside (each side capped at
// max_radius beyond the coefficient hull for slowly decaying prototypes), then
// edge entries below the floor are trimmed.  If tail_bound is non-null it
// receives a sup bound on the omitted entries.
FiniteSequence restrict_lattice(const BandLimitedFunction& f, double u,
                                double trunc_floor = 1e-12, long max_radius = 4096,
                                double* tail_bound = nullptr);

// Exact-window variant: evaluates f(n + u) for n in [n_lo, n_hi] only.
FiniteSequence restrict_lattice_window(const BandLimitedFunction& f, double u,
                                       long n_lo, long n_hi);

// 1-periodization sum_k f(x + k), truncated once the certified tail (from the
// power envelope) is below tail_tol.  Refuses -- rather than silently
// truncating -- when the envelope decays too slowly to certify the tail.
cplx periodize(const std::function<cplx(double)>& f, const PowerEnvelope& env,
               double x, double tail_tol);

// Smooth cutoff psi_M = M psi(M .): spectrum identically 1 on [-M, M] with
// support in [-2M, 2M], M >= 1; realized as the raised cosine of scale 2M.
Prototype make_cutoff(double M);

} // namespace bmt
