#include <doctest.h>

#include <cmath>

#include "bandlim/errors.hpp"
#include "bandlim/numerics.hpp"
#include "bandlim/spectrum.hpp"
#include "generators.hpp"

using namespace bandlim;
using gen::kPi;

namespace {

// (1/sqrt(2 pi)) int f-hat(v) e^{ivt} dv by plain Gauss-Legendre panels between breakpoints.
cplx inversion_oracle(const Spectrum& s, double t) {
  const auto bp = breakpoints(s);
  const int panels = 50;
  double re = 0.0, im = 0.0;
  for (size_t k = 0; k + 1 < bp.size(); ++k) {
    double step = (bp[k + 1] - bp[k]) / panels;
    for (int i = 0; i < panels; ++i) {
      double a = bp[k] + i * step, b = a + step;
      re += gauss_legendre([&](double v) { return (spectral_density(s, v) * std::polar(1.0, v * t)).real(); }, a, b, 32);
      im += gauss_legendre([&](double v) { return (spectral_density(s, v) * std::polar(1.0, v * t)).imag(); }, a, b, 32);
    }
  }
  return cplx(re, im) / std::sqrt(2.0 * kPi);
}

double time_l2_oracle(const Spectrum& s, double T) {
  double total = 0.0;
  for (double a = -T; a < T; a += 0.5) total += gauss_legendre([&](double t) { return std::norm(time_eval(s, t)); }, a, a + 0.5, 32);
  return std::sqrt(total);
}

}  // namespace

TEST_CASE("triangle density at the peak and the support edge") {
  Spectrum s = gen::unit_triangle();
  CHECK(spectral_density(s, 0.0).real() == doctest::Approx(0.398942280401).epsilon(1e-12));
  CHECK(std::abs(spectral_density(s, 2 * kPi)) == 0.0);
  CHECK(std::abs(spectral_density(s, 7.0)) == 0.0);
}

TEST_CASE("power tail density") {
  Spectrum s({}, {PowerTail{1.0, 1.0, 1.0}});
  CHECK(spectral_density(s, 2.0).real() == doctest::Approx(0.5));
  CHECK(spectral_density(s, -2.0).real() == doctest::Approx(0.5));
  CHECK(std::abs(spectral_density(s, 0.5)) == 0.0);
}

TEST_CASE("time values at the origin") {
  CHECK(time_eval(sinc_spectrum(), 0.0).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(time_eval(gen::unit_triangle(), 0.0).real() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("time value matches an inversion quadrature") {
  TriangleAtom a{1.0, 1.0 / (4 * kPi * kPi), 2.5, 0.0};
  Spectrum s = gen::single(a);
  cplx oracle = inversion_oracle(s, kPi);
  CHECK(std::abs(time_eval(s, kPi) - oracle) < 1e-9);

  gen::Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    Spectrum r = rng.spectrum();
    double t = rng.uniform(-5.0, 5.0);
    CHECK(std::abs(time_eval(r, t) - inversion_oracle(r, t)) < 1e-9);
  }
}

TEST_CASE("time evaluation rejects power tails") {
  Spectrum s({TriangleAtom{}}, {PowerTail{1.0, 1.0, 1.0}});
  CHECK_THROWS_AS(time_eval(s, 0.0), UnsupportedTimeEval);
}

TEST_CASE("inner products of disjoint and repeated bumps") {
  // psi_n: sinc^2(t / (2 pi n)) e^{i(n + 1/2)t}, support [n + 1/2 - 1/n, n + 1/2 + 1/n]
  auto psi = [](double n) { return gen::single(TriangleAtom{1.0, 1.0 / (2 * kPi * n), n + 0.5, 0.0}); };
  for (int n = 2; n < 8; ++n) {
    CHECK(inner_product(psi(n), psi(n)).real() == doctest::Approx(4 * kPi * n / 3).epsilon(1e-12));
    CHECK(inner_product(psi(n), psi(n + 1)) == cplx(0.0, 0.0));
  }
  CHECK(inner_product(sinc_spectrum(), sinc_spectrum()).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("triangle norms for every width and center") {
  gen::Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    double b = rng.log_uniform(1e-3, 1e3), c = rng.uniform(-1e3, 1e3);
    Spectrum s = gen::single(TriangleAtom{1.0, b, c, rng.uniform(-3, 3)});
    CHECK(gen::rel_err(l1_spectral_norm(s), std::sqrt(2 * kPi)) < 1e-10);
    CHECK(gen::rel_err(l2_norm(s), std::sqrt(2.0 / (3.0 * b))) < 1e-10);
  }
  CHECK(l2_norm(Spectrum()) == 0.0);
  CHECK(l1_spectral_norm(Spectrum()) == 0.0);
}

TEST_CASE("breakpoints") {
  const auto tri = breakpoints(gen::unit_triangle());
  REQUIRE(tri.size() == 3);
  CHECK(tri[0] == doctest::Approx(-2 * kPi));
  CHECK(tri[1] == 0.0);
  CHECK(tri[2] == doctest::Approx(2 * kPi));

  const auto tail = breakpoints(Spectrum({}, {PowerTail{1.0, 1.0, 1.0}}));
  REQUIRE(tail.size() == 2);
  CHECK(tail[0] == -1.0);
  CHECK(tail[1] == 1.0);

  gen::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Spectrum s = rng.spectrum(5) + gen::unit_triangle();
    const auto bp = breakpoints(s);
    for (size_t k = 1; k < bp.size(); ++k) CHECK(bp[k - 1] < bp[k]);
  }
}

TEST_CASE("property: inner product with itself is the squared norm") {
  gen::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    Spectrum s = rng.spectrum(4);
    double n = l2_norm(s);
    CHECK(gen::rel_err(inner_product(s, s).real(), n * n) < 1e-12);
  }
}

TEST_CASE("property: densities add under concatenation") {
  gen::Rng rng(19);
  Spectrum a = rng.spectrum(4), b = rng.spectrum(4);
  Spectrum sum = a + b;
  int bad = 0;
  for (int i = 0; i < 10000; ++i) {
    double v = rng.uniform(-25.0, 25.0);
    cplx expect = spectral_density(a, v) + spectral_density(b, v);
    if (std::abs(spectral_density(sum, v) - expect) > 1e-13 * (1.0 + std::abs(expect))) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("property: disjoint supports are orthogonal") {
  gen::Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    TriangleAtom a = rng.triangle();
    TriangleAtom b = rng.triangle();
    b.c = a.c + 2 * kPi * (a.b + b.b) + rng.uniform(0.0, 3.0);
    CHECK(inner_product(gen::single(a), gen::single(b)) == cplx(0.0, 0.0));
  }
}

TEST_CASE("property: Plancherel against a time-domain quadrature") {
  gen::Rng rng(29);
  for (int i = 0; i < 5; ++i) {
    std::vector<Atom> atoms;
    for (int k = 0; k < 2; ++k) {
      TriangleAtom t = rng.triangle();
      t.b = rng.uniform(0.3, 1.0);
      atoms.push_back(t);
    }
    Spectrum s(atoms);
    CHECK(gen::rel_err(time_l2_oracle(s, 400.0), l2_norm(s)) < 1e-6);
  }
}

TEST_CASE("scaling and dilation") {
  Spectrum s = gen::unit_triangle();
  CHECK(l2_norm(s.scaled(-3.0)) == doctest::Approx(3.0 * l2_norm(s)));
  // v -> f(2v) halves the support, so the L2 norm drops by sqrt(2)
  CHECK(l2_norm(s.dilated(2.0)) == doctest::Approx(l2_norm(s) / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(spectral_density(s.dilated(2.0), 1.0) == spectral_density(s, 2.0));
}

TEST_CASE("invalid atoms are rejected") {
  CHECK_THROWS_AS(Spectrum({TriangleAtom{1.0, 0.0, 0.0, 0.0}}), InvalidSpectrum);
  CHECK_THROWS_AS(Spectrum({}, {PowerTail{0.4, 1.0, 1.0}}), InvalidSpectrum);
}
