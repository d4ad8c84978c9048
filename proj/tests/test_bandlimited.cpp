#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "bmt/bandlimited.hpp"
#include "bmt/quadrature.hpp"
#include "bmt/rng.hpp"

using bmt::BandLimitedFunction;
using bmt::cplx;
using bmt::FiniteSequence;
using bmt::Prototype;

TEST_CASE("prototypes: pinned closed-form values") {
  const Prototype sc = Prototype::sinc_kernel();
  CHECK(sc(0.0) == doctest::Approx(1.0));
  CHECK(sc(0.5) == doctest::Approx(2.0 / bmt::pi).epsilon(1e-15));
  CHECK(sc(3.0) == 0.0);
  CHECK(sc.fourier(0.49) == doctest::Approx(1.0));
  CHECK(sc.fourier(0.51) == 0.0);
  CHECK(sc.fourier_radius() == doctest::Approx(0.5));

  const Prototype rc = Prototype::raised_cosine(1.0);
  CHECK(rc(0.0) == doctest::Approx(1.5).epsilon(1e-15)); // sup = 3s/2
  CHECK(rc.fourier(0.4) == doctest::Approx(1.0));
  CHECK(rc.fourier(0.75) == doctest::Approx(0.5).epsilon(1e-14)); // sin^2 roll-off
  CHECK(rc.fourier(1.2) == 0.0);
  CHECK(rc.flat_radius() == doctest::Approx(0.5));
  CHECK(rc.fourier_radius() == doctest::Approx(1.0));

  // BOX_SPECTRUM(1/2) coincides with sinc.
  const Prototype bx = Prototype::box_spectrum(0.5);
  for (double x : {0.0, 0.3, 1.7, -2.4}) CHECK(bx(x) == doctest::Approx(sc(x)));
}

TEST_CASE("prototypes: raised-cosine dilation family and envelope") {
  const Prototype rc2 = Prototype::raised_cosine(2.0);
  // phi_s(x) = s phi_rc(s x)
  for (double x : {0.0, 0.31, -1.07, 2.5})
    CHECK(rc2(x) == doctest::Approx(2.0 * bmt::raised_cosine_time(2.0 * x)).epsilon(1e-14));
  // Envelope certifies the tail and is nonincreasing.
  const Prototype rc = Prototype::raised_cosine(1.0);
  for (double x : {2.0, 2.5, 4.0, 10.0, 40.0}) {
    CHECK(std::abs(rc(x)) <= rc.envelope(x) * (1.0 + 1e-12));
    CHECK(rc.envelope(x + 1.0) <= rc.envelope(x));
  }
  const auto env = rc.power_envelope();
  CHECK(env.power == doctest::Approx(3.0));
  // Stability across the removable singularity at |x| = 1.
  const double at1 = bmt::raised_cosine_time(1.0);
  CHECK(std::isfinite(at1));
  CHECK(bmt::raised_cosine_time(1.0 + 1e-9) == doctest::Approx(at1).epsilon(1e-6));
  CHECK(bmt::raised_cosine_time(1.0 - 1e-9) == doctest::Approx(at1).epsilon(1e-6));
}

TEST_CASE("bandlimited: sinc extension interpolates its coefficients") {
  bmt::Rng rng(11);
  const FiniteSequence a = bmt::draw_sequence(rng, bmt::CoefficientLaw::GAUSSIAN, 3);
  const BandLimitedFunction f = bmt::extend_sequence(a, Prototype::sinc_kernel());
  for (long n = -5; n <= 5; ++n)
    CHECK(std::abs(f.eval(static_cast<double>(n)) - a.at(n)) <= 1e-13);
}

TEST_CASE("bandlimited: fourier transform formula and dilation") {
  const BandLimitedFunction f =
      bmt::extend_sequence(FiniteSequence::delta(1), Prototype::box_spectrum(0.5));
  // f^(xi) = e^{-2 pi i xi} chi_[-1/2,1/2]
  const cplx at = f.fourier(0.3);
  CHECK(std::abs(at - bmt::unit_phase(-0.3)) <= 1e-15);
  CHECK(std::abs(f.fourier(0.7)) == 0.0);
  CHECK(f.fourier_radius() == doctest::Approx(0.5));

  const BandLimitedFunction g = f.dilated(2.0);
  CHECK(g.fourier_radius() == doctest::Approx(1.0));
  for (double x : {0.2, -0.9, 1.31}) CHECK(std::abs(g.eval(x) - f.eval(2.0 * x)) <= 1e-15);

  const auto breaks = g.fourier_breakpoints();
  CHECK(std::count(breaks.begin(), breaks.end(), 1.0) == 1);
  CHECK(std::count(breaks.begin(), breaks.end(), -1.0) == 1);
}

TEST_CASE("bandlimited: shannon reconstruction, critical sinc case") {
  bmt::Rng rng(23);
  const FiniteSequence a = bmt::draw_sequence(rng, bmt::CoefficientLaw::GAUSSIAN, 3);
  const BandLimitedFunction f = bmt::extend_sequence(a, Prototype::sinc_kernel());
  // Band radius 1/2 at sampling rate 2R = 1: samples are the coefficients and
  // the critical-rate reconstruction is exact with a finite sum.
  const FiniteSequence samples = bmt::restrict_lattice_window(f, 0.0, -3, 3);
  for (double x : {0.37, -1.95, 2.5, 0.0}) {
    const cplx rec = bmt::shannon_reconstruct(samples, 0.5, x, Prototype::sinc_kernel());
    CHECK(std::abs(rec - f.eval(x)) <= 1e-13);
  }
}

TEST_CASE("bandlimited: shannon reconstruction at the oversampling margin") {
  // Band: modulation 0.15 + raised-cosine radius 1 -> spectrum in
  // [-0.85, 1.15], band radius b = 1.15.  Sampling with 2R = 3.45 and a
  // raised-cosine reconstructor of scale 2/3 sits exactly at the margin
  // (flat radius 2R/3 = b, support radius 2R 2/3 = 2R - b), so the
  // reconstruction is exact up to sample truncation.
  bmt::Rng rng(123);
  FiniteSequence::Builder wb;
  for (long n = -1; n <= 1; ++n) wb.add(n, rng.cnormal());
  const BandLimitedFunction w =
      bmt::extend_sequence(wb.build(), Prototype::raised_cosine(1.0));
  const auto f = [&](double x) { return bmt::unit_phase(0.15 * x) * w.eval(x); };

  const double R = 1.725;
  FiniteSequence::Builder sb;
  for (long n = -138; n <= 138; ++n)
    sb.add(n, f(static_cast<double>(n) / (2.0 * R)));
  const FiniteSequence samples = sb.build();

  const Prototype recon = Prototype::raised_cosine(2.0 / 3.0);
  bmt::Rng xr(456);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = xr.uniform(-5.0, 5.0);
    worst = std::max(worst, std::abs(bmt::shannon_reconstruct(samples, R, x, recon) - f(x)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("bandlimited: lattice restriction windows and certified tails") {
  bmt::Rng rng(29);
  FiniteSequence::Builder cb;
  for (long n = -1; n <= 1; ++n) cb.add(n, rng.cnormal());
  const BandLimitedFunction f =
      bmt::extend_sequence(cb.build(), Prototype::raised_cosine(2.0));

  const FiniteSequence w = bmt::restrict_lattice_window(f, 0.25, -10, 10);
  for (long n = -10; n <= 10; ++n)
    CHECK(std::abs(w.at(n) - f.eval(static_cast<double>(n) + 0.25)) == 0.0);

  double tail = -1.0;
  const FiniteSequence a = bmt::restrict_lattice(f, 0.25, 1e-8, 2048, &tail);
  CHECK(tail >= 0.0);
  CHECK(tail <= 1e-8);
  for (long n = a.lo(); n <= a.hi(); ++n)
    CHECK(std::abs(a.at(n) - f.eval(static_cast<double>(n) + 0.25)) == 0.0);
  // Everything outside the returned window really is below the floor.
  CHECK(std::abs(f.eval(static_cast<double>(a.lo() - 1) + 0.25)) <= 1e-8);
  CHECK(std::abs(f.eval(static_cast<double>(a.hi() + 1) + 0.25)) <= 1e-8);

  // u outside [-1/2, 1/2] reduces mod 1 with the complementary index shift.
  const FiniteSequence b1 = bmt::restrict_lattice(f, 1.25, 1e-8, 2048);
  const FiniteSequence b0 = bmt::restrict_lattice(f, 0.25, 1e-8, 2048);
  REQUIRE(b1.size() == b0.size());
  for (long n = b1.lo(); n <= b1.hi(); ++n) CHECK(std::abs(b1.at(n) - b0.at(n + 1)) == 0.0);
}

TEST_CASE("bandlimited: periodization sums and refusal") {
  const Prototype psi = bmt::make_cutoff(1.0);
  const auto fn = [&](double x) { return cplx{psi(x), 0.0}; };
  const auto env = psi.power_envelope();
  for (double x : {0.0, 0.3, -0.45}) {
    const cplx per = bmt::periodize(fn, env, x, 1e-10);
    bmt::NeumaierSumC direct;
    for (long k = -100000; k <= 100000; ++k)
      direct.add(fn(x + static_cast<double>(k)));
    CHECK(std::abs(per - direct.value()) <= 1e-8);
  }
  // sinc decays like 1/x: the tail cannot be certified, so periodize refuses.
  const Prototype sc = Prototype::sinc_kernel();
  const auto slow = [&](double x) { return cplx{sc(x), 0.0}; };
  CHECK_THROWS(bmt::periodize(slow, sc.power_envelope(), 0.3, 1e-10));
}

TEST_CASE("bandlimited: cutoff spectrum and unit mass") {
  const Prototype psi1 = bmt::make_cutoff(1.0);
  CHECK(psi1.fourier(0.0) == doctest::Approx(1.0));
  CHECK(psi1.fourier(0.99) == doctest::Approx(1.0));
  const double mid = psi1.fourier(1.5);
  CHECK(mid > 0.0);
  CHECK(mid < 1.0);
  CHECK(psi1.fourier(2.5) == 0.0);
  CHECK_THROWS_AS(bmt::make_cutoff(0.5), std::domain_error);

  // Unit integral, checked in the time domain.
  const auto& rule = bmt::gauss_legendre(32);
  const cplx total = bmt::integrate_uniform(
      [&](double x) { return cplx{psi1(x), 0.0}; }, -4000.0, 4000.0, 8000, rule);
  CHECK(std::abs(total - cplx{1.0, 0.0}) <= 1e-8);
}

TEST_CASE("bandlimited: convolution with the cutoff reproduces band functions") {
  bmt::Rng rng(17);
  FiniteSequence::Builder cb;
  for (long n = -1; n <= 1; ++n) cb.add(n, rng.cnormal());
  const BandLimitedFunction f =
      bmt::extend_sequence(cb.build(), Prototype::raised_cosine(0.8));
  REQUIRE(f.fourier_radius() <= 1.0); // inside the flat part of psi_1^

  const Prototype psi = bmt::make_cutoff(1.0);
  const auto& rule = bmt::gauss_legendre(32);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double x = rng.uniform(-3.0, 3.0);
    const cplx conv = bmt::integrate_uniform(
        [&](double y) { return f.eval(y) * psi(x - y); }, -64.0, 64.0, 256, rule);
    worst = std::max(worst, std::abs(conv - f.eval(x)));
  }
  CHECK(worst <= 1e-6);
}
