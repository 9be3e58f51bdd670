#include <doctest.h>

#include <cmath>

#include "bandlim/counterexamples.hpp"
#include "bandlim/distances.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/formulas.hpp"
#include "bandlim/numerics.hpp"
#include "bandlim/rates.hpp"
#include "generators.hpp"

using namespace bandlim;
using gen::kPi;

namespace {

// sum_{|k| <= K} f(hk) sinc(t/h - k) term by term from time values.
cplx series_oracle(const Spectrum& s, double h, double t, long K) {
  cplx sum = 0.0;
  for (long k = -K; k <= K; ++k) sum += time_eval(s, h * k) * sinc(t / h - k);
  return sum;
}

// (1/sqrt(2 pi)) int_{|v| <= pi/h} f-hat(v) e^{ivt} dv by adaptive quadrature between breakpoints.
cplx band_pass_oracle(const Spectrum& s, double h, double t) {
  const double cut = kPi / h;
  std::vector<double> cuts{-cut};
  for (double b : breakpoints(s))
    if (b > -cut && b < cut) cuts.push_back(b);
  cuts.push_back(cut);
  double re = 0.0, im = 0.0;
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    auto g = [&](double v) { return spectral_density(s, v) * std::polar(1.0, v * t); };
    re += adaptive_quadrature([&](double v) { return g(v).real(); }, cuts[k], cuts[k + 1], 1e-13);
    im += adaptive_quadrature([&](double v) { return g(v).imag(); }, cuts[k], cuts[k + 1], 1e-13);
  }
  return cplx(re, im) / std::sqrt(2 * kPi);
}

std::vector<double> fine_grid(double lo, double hi, double step) {
  std::vector<double> out;
  for (double t = lo; t <= hi; t += step) out.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("sampling series examples") {
  Spectrum s = sinc_spectrum();
  for (double t : {0.0, 0.3, -2.7, 5.5}) {
    auto v = wks_series(s, 1.0, t, 64);
    CHECK(std::abs(v.value - sinc(t)) < 1e-15);
  }
  auto half = wks_series(s, 0.5, 0.3, 1000);
  CHECK(std::abs(half.value - sinc(0.3)) <= half.budget + 1e-13);

  Spectrum tri = gen::unit_triangle();
  auto rep = wks_report(tri, 0.1, 0.0);
  CHECK(rep.holds());
  CHECK(rep.bound == doctest::Approx(std::sqrt(2 / kPi) * dist(tri, 1.0, kPi / 0.1)));
  CHECK_THROWS_AS(wks_series(Spectrum({}, {PowerTail{1.0, 1.0, 1.0}}), 1.0, 0.0), UnsupportedTimeEval);
}

TEST_CASE("property: series against a term-by-term oracle") {
  gen::Rng rng(101);
  for (int i = 0; i < 10; ++i) {
    Spectrum s = rng.spectrum();
    double h = rng.uniform(0.1, 1.5), t = rng.uniform(-3.0, 3.0);
    long K = 400;
    CHECK(std::abs(wks_series(s, h, t, K).value - series_oracle(s, h, t, K)) < 1e-10);
  }
}

TEST_CASE("spectral remainder") {
  Spectrum s = sinc_spectrum();
  for (double t : {0.1, 0.7, 3.3}) CHECK(wks_remainder_spectral(s, 1.0, t) == cplx(0.0, 0.0));
  Spectrum tri = gen::unit_triangle();
  for (long k = -3; k <= 3; ++k) CHECK(std::abs(wks_remainder_spectral(tri, 0.7, 0.7 * k)) < 1e-14);

  auto rep = wks_report(tri, 0.1, 0.3);
  CHECK(std::abs(wks_remainder_spectral(tri, 0.1, 0.3) - rep.remainder) <= 1e-6 + rep.truncation_budget);
}

TEST_CASE("property: spectral remainder equals the direct difference") {
  gen::Rng rng(103);
  for (int i = 0; i < 10; ++i) {
    Spectrum s = rng.spectrum();
    double h = rng.uniform(0.2, 2.0), t = rng.uniform(-3.0, 3.0);
    auto rep = wks_report(s, h, t);
    CHECK(std::abs(wks_remainder_spectral(s, h, t) - rep.remainder) <= 1e-6 + rep.truncation_budget);
    CHECK(rep.holds());
  }
}

TEST_CASE("sampling extremal ratio") {
  for (double h : {1.0, 0.5}) {
    double ratio = wks_extremal_ratio(h, fine_grid(-h, 2 * h, 1e-3 * h));
    CHECK(ratio <= 1 + 1e-9);
    CHECK(ratio >= 0.99);
    // the grid search runs on the band form; the sampled series must agree with it
    std::vector<double> ts{0.25 * h, 0.5 * h, 1.3 * h};
    auto reps = wks_report(wks_extremal(h), h, ts, 4096);
    for (size_t i = 0; i < ts.size(); ++i)
      CHECK(std::abs(wks_remainder_spectral(wks_extremal(h), h, ts[i]) - reps[i].remainder) <= 1e-6 + reps[i].truncation_budget);
  }
  Spectrum tri = gen::unit_triangle();
  double worst = 0.0;
  for (const auto& r : wks_report(tri, 1.0, fine_grid(-3.0, 3.0, 1e-2))) worst = std::max(worst, r.ratio());
  CHECK(worst > 0.0);
  CHECK(worst < 1.0);
}

TEST_CASE("reproducing kernel formula") {
  Spectrum s = sinc_spectrum();
  for (double h : {1.0, 0.5})
    for (double t : {0.0, 0.4, -2.2}) CHECK(std::abs(rkf_report(s, h, t).remainder) < 1e-14);

  for (double h : {1.0, 0.5}) {
    double ratio = rkf_extremal_ratio(h, fine_grid(-h, h, 1e-3 * h));
    CHECK(ratio <= 1 + 1e-9);
    CHECK(ratio >= 0.99);
  }

  gen::Rng rng(107);
  for (int i = 0; i < 10; ++i) {
    Spectrum r = rng.spectrum();
    double h = rng.uniform(0.2, 2.0), t = rng.uniform(-3.0, 3.0);
    CHECK(std::abs(rkf_approx(r, h, t) - band_pass_oracle(r, h, t)) < 1e-9);
    auto rep = rkf_report(r, h, t);
    CHECK(rep.holds());
    CHECK(rep.bound == doctest::Approx(dist(r, 1.0, kPi / h) / std::sqrt(2 * kPi)));
  }
  // tails are fine on the band-pass side
  CHECK_NOTHROW(rkf_approx(Spectrum({}, {PowerTail{1.0, 1.0, 1.0}}), 0.5, 0.3));
}

TEST_CASE("property: remainder bounds on counterexample spectra") {
  std::vector<Spectrum> spectra{gen::unit_triangle(), build({"f_gamma_delta", 1.75, 0.0, 16}),
                                build({"dyadic_sqrt", 0.0, 0.0, 6})};
  int violations = 0;
  for (const auto& s : spectra)
    for (double h : {1.0, 0.5, 0.25}) {
      std::vector<double> ts{-1.3, 0.0, 0.45, 2.1};
      for (const auto& r : wks_report(s, h, ts)) violations += !r.holds();
      for (double t : ts) violations += !rkf_report(s, h, t).holds();
    }
  CHECK(violations == 0);
}

TEST_CASE("sampling remainder rate for a derivative in Mn") {
  // m = 1: the remainder is O(h^{3/2}), comfortably above the O(h) guarantee
  Spectrum f = dyadic_sqrt_antiderivative(20);
  std::vector<Point> pts;
  for (int k = 3; k <= 10; ++k) {
    double h = std::ldexp(1.0, -k), worst = 0.0;
    for (double t : {0.1 * h, 0.3 * h, 0.5 * h, 0.77 * h}) worst = std::max(worst, std::abs(wks_remainder_spectral(f, h, t)));
    pts.push_back({h, worst});
  }
  CHECK(loglog_fit(pts).slope >= 1 - 0.15);
}

TEST_CASE("Parseval sampling identity") {
  Spectrum s = sinc_spectrum();
  for (double h : {1.0, 0.5, 0.25}) {
    auto r = parseval(s, s, h, 4096);
    CHECK(std::abs(r.remainder) <= r.truncation_budget + 1e-12);
    CHECK(std::abs(r.aliasing) < 1e-14);
  }
  // h > 1 undersamples: the two neighbouring aliases each overlap a width 2 pi (1 - 1/h)
  auto over = parseval(s, s, 1.5, 4096);
  CHECK(std::abs(over.remainder) > 0.3);
  CHECK(over.consistent(1e-9));
  CHECK(std::abs(over.remainder + 2 * (1 - 1 / 1.5)) <= over.truncation_budget);

  gen::Rng rng(109);
  for (int i = 0; i < 5; ++i) {
    Spectrum f = rng.spectrum(), g = rng.spectrum();
    auto r = parseval(f, g, rng.uniform(0.3, 2.0), 4096);
    CHECK(r.consistent(1e-8));
  }
}

TEST_CASE("Parseval remainder rate") {
  // f' has dyadic_sqrt's band norms, so m = 1 and the rate is h^{3/2}; h_k = 2 pi / (2^k - 1) aligns the
  // aliasing shifts with the atom centres
  Spectrum f = dyadic_sqrt_antiderivative(24);
  std::vector<Point> pts;
  for (int k = 3; k <= 12; ++k) {
    double h = 2 * kPi / (std::ldexp(1.0, k) - 1);
    pts.push_back({h, std::abs(parseval_aliasing(f, f, h))});
  }
  RateFit fit = loglog_fit(pts);
  CHECK(fit.slope == doctest::Approx(1.5).epsilon(0.15 / 1.5));
  CHECK(fit.r_squared >= 0.99);

  auto direct = parseval(f, f, 2 * kPi / 7, 8192);
  CHECK(direct.consistent(1e-8));
}

TEST_CASE("Bernstein inequality") {
  auto classical = bernstein_check(sinc_spectrum(), 2, kPi);
  CHECK(classical.dist_term == 0.0);
  CHECK(classical.holds());
  CHECK(classical.lhs <= std::pow(kPi, 2) * (1 + 1e-12));

  gen::Rng rng(113);
  for (int i = 0; i < 20; ++i) {
    Spectrum s = rng.spectrum();
    int order = rng.integer(1, 3);
    double sigma = rng.log_uniform(0.1, 20.0);
    auto r = bernstein_check(s, order, sigma);
    CHECK(r.holds());
    CHECK(std::abs(r.split_defect()) <= 1e-10 * r.lhs * r.lhs);
    // the chain: lhs <= low + dist <= sigma^s ||f_0|| + dist <= classical + dist
    double inner = std::sqrt(integrate_abs_q(s.pieces(), 2.0, 0.0, inside(sigma)));
    CHECK(r.lhs <= (r.low_part + r.dist_term) * (1 + 1e-12));
    CHECK(r.low_part <= std::pow(sigma, order) * inner * (1 + 1e-12));
    CHECK(inner <= l2_norm(s) * (1 + 1e-12));
  }
  CHECK_THROWS_AS(bernstein_check(Spectrum({}, {PowerTail{1.0, 1.0, 1.0}}), 1, 1.0), NotInSpace);
}

TEST_CASE("Nikol'skii inequality") {
  Spectrum s = sinc_spectrum();
  for (double h : {1.0, 0.5}) {
    auto sum = nikolskii_sum(s, h);
    CHECK(sum.value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(sum.value - 1.0) <= sum.budget + 1e-12);
  }
  CHECK(nikolskii_check(s, 1.0, kPi).bound == doctest::Approx(1 + kPi).epsilon(1e-12));
  CHECK(nikolskii_check(s, 1.0, kPi).holds());

  Spectrum tri = gen::unit_triangle();
  long K = 256;
  double h = 0.7, direct = 0.0;
  for (long k = -K; k <= K; ++k) direct += std::norm(time_eval(tri, h * k));
  CHECK(nikolskii_sum(tri, h, K).value == doctest::Approx(std::sqrt(h * direct)).epsilon(1e-12));

  int violations = 0;
  for (double hh : log_grid(0.05, 2.0, 8))
    for (double sigma : log_grid(0.1, 10.0, 8)) violations += !nikolskii_check(tri, hh, sigma).holds();
  CHECK(violations == 0);
}
