#include <doctest.h>

#include <cmath>

#include "bandlim/counterexamples.hpp"
#include "bandlim/distances.hpp"
#include "bandlim/numerics.hpp"
#include "bandlim/rates.hpp"
#include "bandlim/smoothness.hpp"
#include "generators.hpp"

using namespace bandlim;
using gen::kPi;

namespace {

// int weight(v) |f-hat(v)|^2 dv by adaptive quadrature between breakpoints.
template <class W>
double weighted_sq_oracle(const Spectrum& s, W weight) {
  const auto bp = breakpoints(s);
  double total = 0.0;
  for (size_t k = 0; k + 1 < bp.size(); ++k)
    total += adaptive_quadrature([&](double v) { return weight(v) * std::norm(spectral_density(s, v)); }, bp[k], bp[k + 1], 1e-13);
  return total;
}

double difference_oracle(const Spectrum& s, int r, double h) {
  return std::sqrt(weighted_sq_oracle(s, [&](double v) { return std::pow(2 * std::sin(h * v / 2), 2 * r); }));
}

}  // namespace

TEST_CASE("difference norm examples") {
  CHECK(difference_norm(sinc_spectrum(), 1, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // 2 (1 - sinc h) from the rectangle
  CHECK(difference_norm(sinc_spectrum(), 1, 0.4) == doctest::Approx(std::sqrt(2 * (1 - sinc(0.4)))).epsilon(1e-12));
  Spectrum t = gen::unit_triangle();
  double prev = kInf;
  for (double h = 1.0; h > 1e-6; h /= 10) {
    double d = difference_norm(t, 1, h);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("property: difference norm matches the multiplier quadrature") {
  gen::Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    Spectrum s = rng.spectrum();
    int r = rng.integer(1, 3);
    double h = rng.log_uniform(1e-3, 3.0);
    CHECK(gen::rel_err(difference_norm(s, r, h), difference_oracle(s, r, h)) < 1e-8);
  }
}

TEST_CASE("property: difference norm is at most 2^r times the norm") {
  gen::Rng rng(14);
  for (int i = 0; i < 200; ++i) {
    Spectrum s = rng.spectrum();
    int r = rng.integer(1, 4);
    double h = rng.log_uniform(1e-3, 100.0);
    CHECK(difference_norm(s, r, h) <= std::pow(2.0, r) * l2_norm(s) * (1 + 1e-12));
  }
}

TEST_CASE("modulus examples") {
  CHECK(modulus(Spectrum(), 2, 1.0) == 0.0);
  CHECK(modulus(sinc_spectrum(), 1, 1.0) >= std::sqrt(2.0) * (1 - 1e-12));
  gen::Rng rng(16);
  for (int i = 0; i < 20; ++i) {
    Spectrum s = rng.spectrum();
    int r = rng.integer(1, 2);
    double delta = rng.log_uniform(1e-2, 1.0);
    CHECK(modulus(s, r, 2 * delta) <= std::pow(3.0, r) * modulus(s, r, delta) * (1 + 1e-12));
  }
}

TEST_CASE("modulus profile is nondecreasing and dominates single values") {
  Spectrum s = build({"f_gamma_delta", 1.75, 0.0, 256});
  auto deltas = log_grid(1e-3, 1.0, 12);
  auto prof = modulus_profile(s, 2, deltas);
  REQUIRE(prof.size() == deltas.size());
  for (size_t i = 0; i < prof.size(); ++i) {
    CHECK(prof[i].value >= modulus(s, 2, deltas[i]) * (1 - 1e-12));
    if (i) CHECK(prof[i].value >= prof[i - 1].value);
  }
}

TEST_CASE("property: Marchaud chain on triangle atoms") {
  gen::Rng rng(18);
  for (int i = 0; i < 5; ++i) {
    Spectrum s = gen::single(rng.triangle());
    for (double delta : log_grid(1e-3, 2.0, 20)) {
      double lhs = modulus(s, 2, delta);
      // omega_1(f'; delta) over the same h grid, f' carrying the multiplier iv
      double rhs = 0.0;
      for (double h : modulus_grid(delta))
        rhs = std::max(rhs, std::sqrt(weighted_sq_oracle(s, [&](double v) { return v * v * std::pow(2 * std::sin(h * v / 2), 2); })));
      CHECK(lhs <= delta * rhs * (1 + 1e-8));
    }
  }
}

TEST_CASE("Besov seminorm") {
  Spectrum s = sinc_spectrum();
  CHECK(besov_seminorm(s, 1.0, 2) == besov_seminorm(s, 1.0, 20));
  CHECK(besov_seminorm(s, 1.0, 2) > 0.0);
  CHECK(besov_seminorm(Spectrum(), 0.5, 10) == 0.0);
  // band 2 (pi lies in (2, 4]) holds the mass beyond 2: 2^2 * sqrt((pi - 2) / pi)
  CHECK(besov_seminorm(s, 1.0, 2) >= 4 * std::sqrt((kPi - 2) / kPi) * (1 - 1e-12));

  Spectrum f = build({"f_gamma_delta", 1.75, 0.0, 4096});
  double at8 = besov_seminorm(f, 0.75, 8), at11 = besov_seminorm(f, 0.75, 11);
  CHECK(std::isfinite(at11));
  CHECK(at11 <= 1.1 * at8);
}

TEST_CASE("Lipschitz slopes") {
  // bandlimited saturation: omega_1 ~ delta ||f'||
  RateFit band = lipschitz_slope(sinc_spectrum(), 1, 1e-4, 1e-2, 8);
  CHECK(band.slope == doctest::Approx(1.0).epsilon(0.01));
  RateFit dil = lipschitz_slope(sinc_spectrum().dilated(0.5), 1, 1e-4, 1e-2, 8);
  CHECK(dil.slope == doctest::Approx(band.slope).epsilon(1e-3));

  Spectrum f = build({"f_gamma_delta", 1.75, 0.0, 4096});
  RateFit fit = lipschitz_slope(f, 2, std::pow(2.0, -8), 0.25, 13);
  CHECK(fit.slope == doctest::Approx(0.75).epsilon(0.05 / 0.75));
  CHECK(fit.r_squared >= 0.99);
}

TEST_CASE("property: modulus slope against half the tail slope") {
  for (double gamma : {1.6, 1.75, 2.5}) {
    Spectrum f = build({"f_gamma_delta", gamma, 0.0, 4096});
    RateFit lip = lipschitz_slope(f, 2, std::pow(2.0, -8), 0.25, 13);
    auto tail = sweep([&](double sigma) { return fractional_tail(f, sigma, 0.0); }, 16.0, 1024.0, 13);
    CHECK(std::abs(lip.slope + loglog_fit(tail).slope / 2) <= 0.1);
  }
}
