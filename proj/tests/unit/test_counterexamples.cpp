#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bandlim/counterexamples.hpp"
#include "bandlim/distances.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/modulation.hpp"
#include "bandlim/numerics.hpp"
#include "bandlim/rates.hpp"
#include "generators.hpp"

using namespace bandlim;
using gen::kPi;

namespace {

FamilySpec spec_of(const std::string& name, long N = 0) {
  return {name, name == "power_tail" ? 1.25 : 1.75, 0.0, N};
}

// Atom supports in order of centre.
std::vector<std::pair<double, double>> supports(const Spectrum& s) {
  std::vector<std::pair<double, double>> out;
  for (const auto& a : s.atoms()) {
    const auto& t = std::get<TriangleAtom>(a);
    out.push_back({t.c - t.half_width(), t.c + t.half_width()});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// sum_{n > N} n^-p ln^-q n: direct to M, then the integral from M + 1/2.
double p_series_oracle(double p, double q, long N) {
  const long M = 2000000;
  double sum = 0.0;
  for (long n = M; n > N; --n) sum += std::pow(static_cast<double>(n), -p) * std::pow(std::log(static_cast<double>(n)), -q);
  if (q == 0.0) sum += std::pow(M + 0.5, 1 - p) / (p - 1);
  return sum;
}

}  // namespace

TEST_CASE("family atoms and supports") {
  Spectrum f = build({"f_gamma_delta", 1.5, 1.0, 64});
  for (long n = 2; n <= 64; ++n) {
    const auto& a = std::get<TriangleAtom>(f.atoms()[n - 2]);
    CHECK(a.c == n + 0.5);
    CHECK(a.half_width() == doctest::Approx(1.0 / n).epsilon(1e-14));
    CHECK(a.amp == doctest::Approx(std::pow(n, -1.5) / std::log(n)).epsilon(1e-14));
  }
  Spectrum d = build({"dyadic_log", 0.0, 0.0, 20});
  for (long n = 1; n <= 20; ++n) {
    auto [lo, hi] = supports(d)[n - 1];
    CHECK(lo == doctest::Approx(std::ldexp(1.0, n) - 1).epsilon(1e-15));
    CHECK(hi == doctest::Approx(std::ldexp(1.0, n)).epsilon(1e-15));
  }
  Spectrum p = build(spec_of("power_tail"));
  CHECK(p.atoms().empty());
  REQUIRE(p.tails().size() == 1);
  CHECK(p.tails()[0].gamma == 1.25);
}

TEST_CASE("property: supports are pairwise disjoint in every family") {
  for (const auto& name : family_names()) {
    if (name == "power_tail") continue;
    auto sup = supports(build(spec_of(name, name.rfind("dyadic", 0) == 0 ? 40 : 300)));
    for (size_t k = 0; k + 1 < sup.size(); ++k) CHECK(sup[k].second <= sup[k + 1].first);
  }
}

TEST_CASE("band norms") {
  for (double gamma : {1.25, 1.75})
    for (double delta : {0.0, 1.0}) {
      FamilySpec s{"f_gamma_delta", gamma, delta, 0};
      double expect = std::sqrt((4 * kPi / 3) / (std::pow(3.0, 2 * gamma - 1) * std::pow(std::log(3.0), 2 * delta)));
      CHECK(band_l2(s, 3) == doctest::Approx(expect).epsilon(1e-14));
      for (long n : {-5L, -1L, 0L, 1L}) CHECK(band_l2(s, n) == 0.0);
    }

  // the bands tile the truncated series, so their squares add up to its L2 norm
  for (const auto& name : family_names()) {
    if (name == "power_tail") continue;
    FamilySpec s = spec_of(name, name.rfind("dyadic", 0) == 0 ? 12 : 40);
    // index of the band holding the last atom
    long last = name.rfind("dyadic", 0) == 0 ? (1L << 12) - 1 : (name == "f_gamma_delta" ? 40 : 40 * 40 - 1);
    double sum = 0.0;
    for (long n = 0; n <= last; ++n) sum += std::pow(band_l2(s, n), 2);
    double l2 = l2_norm(build(s));
    CHECK(sum == doctest::Approx(l2 * l2).epsilon(1e-12));
  }

  // power tail: 2 int_1^inf v^{-2 gamma} dv
  FamilySpec pt = spec_of("power_tail");
  double sum = 0.0;
  const long M = 200000;
  for (long n = -M; n < M; ++n) sum += std::pow(band_l2(pt, n), 2);
  double rest = 2 * std::pow(static_cast<double>(M), 1 - 2 * pt.gamma) / (2 * pt.gamma - 1);
  CHECK(sum + rest == doctest::Approx(2 / (2 * pt.gamma - 1)).epsilon(1e-10));
}

TEST_CASE("p-series tails") {
  CHECK(power_log_tail(2.0, 0.0, 10) == doctest::Approx(p_series_oracle(2.0, 0.0, 10)).epsilon(1e-10));
  CHECK(power_log_tail(3.5, 0.0, 2) == doctest::Approx(p_series_oracle(3.5, 0.0, 2)).epsilon(1e-10));
  // sum_{n >= 2} 1/n^2 = pi^2/6 - 1
  CHECK(power_log_tail(2.0, 0.0, 1) == doctest::Approx(kPi * kPi / 6 - 1).epsilon(1e-12));
  CHECK(power_log_tail(1.0, 1.0, 10) == kInf);
  CHECK(power_log_tail(0.9, 3.0, 10) == kInf);
  CHECK(std::isfinite(power_log_tail(1.0, 1.5, 10)));
  CHECK(power_log_tail(1.5, 0.75, 100) < power_log_tail(1.5, 0.75, 10));
}

TEST_CASE("property: truncation honesty under doubling") {
  for (const auto& name : family_names()) {
    if (name == "power_tail") continue;
    const bool dy = name.rfind("dyadic", 0) == 0;
    for (long N : dy ? std::vector<long>{8, 16} : std::vector<long>{32, 128}) {
      Spectrum a = build(spec_of(name, N)), b = build(spec_of(name, 2 * N));
      const auto& ta = *a.trunc();
      double la = l2_norm(a), lb = l2_norm(b);
      CHECK(lb * lb - la * la <= ta.bound("l2_sq") * (1 + 1e-9));
      CHECK(lb * lb - la * la >= 0.0);
      CHECK(m21_norm(b) - m21_norm(a) <= ta.bound("m21") * (1 + 1e-9));
      CHECK(l1_spectral_norm(b) - l1_spectral_norm(a) <= ta.bound("l1") * (1 + 1e-9));
      CHECK(ta.omitted_from == doctest::Approx(supports(b)[a.atoms().size()].first).epsilon(1e-15));
      CHECK(ta.n_terms == N - spec_of(name).first_term() + 1);
    }
  }
}

TEST_CASE("dyadic_log distance lower bound") {
  Spectrum s = build({"dyadic_log", 0.0, 0.0, 40});
  for (double sigma : {4.0, 16.0, 256.0, 4096.0}) {
    double lower = (2 * std::sqrt(2 * kPi) / 3) * std::pow(std::log(2.0) / (3 * std::log(sigma)), 1.5);
    double full = std::sqrt(series_dist2(s, sigma));
    CHECK(full >= lower);
    CHECK(full >= dist(s, 2.0, sigma));
  }
  CHECK_THROWS_AS(series_dist2(build({"dyadic_log", 0.0, 0.0, 8}), 1e4), NonConvergence);
}

TEST_CASE("distance slope tracks the smoothness index") {
  for (double beta : {0.6, 0.75}) {
    Spectrum f = build({"f_gamma_delta", beta + 1, 0.0, 4096});
    auto pts = sweep([&](double sigma) { return std::sqrt(series_dist2(f, sigma)); }, 16.0, 1024.0, 9);
    RateFit fit = loglog_fit(pts);
    CHECK(fit.slope == doctest::Approx(-beta).epsilon(0.05 / beta));
    CHECK(fit.r_squared >= 0.99);
  }
}

TEST_CASE("membership reports") {
  for (const auto& name : family_names()) {
    auto rep = membership_report(spec_of(name));
    CAPTURE(name);
    CHECK(rep.family == name);
    CHECK_FALSE(rep.claims.empty());
    CHECK(rep.all_pass());
    CHECK_FALSE(rep.note.empty());
  }
  auto has = [](const MembershipReport& r, const std::string& fragment) {
    return std::any_of(r.claims.begin(), r.claims.end(), [&](const Claim& c) { return c.name.find(fragment) != std::string::npos; });
  };
  CHECK(has(membership_report(spec_of("dyadic_log")), "not in Mn"));
  CHECK(has(membership_report(spec_of("dyadic_sqrt")), "not in W^{1/2,2}_R"));
  CHECK(has(membership_report(spec_of("quadratic_ln34")), "not in Mn"));
  CHECK(has(membership_report(spec_of("quadratic_ln1")), "not in M21_*"));
}

TEST_CASE("antiderivative of dyadic_sqrt") {
  Spectrum anti = dyadic_sqrt_antiderivative(20);
  Spectrum base = build({"dyadic_sqrt", 0.0, 0.0, 20});
  for (size_t n = 0; n < 20; ++n) {
    const auto& a = std::get<TriangleAtom>(anti.atoms()[n]);
    const auto& b = std::get<TriangleAtom>(base.atoms()[n]);
    CHECK(a.amp * a.c == doctest::Approx(b.amp).epsilon(1e-15));
  }
  // |v| ranges over [c - 1/2, c + 1/2] on each atom, within a factor 2 of c
  double d = std::sqrt(integrate_abs_q(anti.pieces(), 2.0, 2.0, whole_line())), l = l2_norm(base);
  CHECK(d >= l / 2);
  CHECK(d <= 2 * l);
  CHECK_THROWS_AS(dyadic_sqrt_antiderivative(41), InvalidFamilyParams);
}

TEST_CASE("invalid family parameters") {
  CHECK_THROWS_AS(build({"f_gamma_delta", 1.0, 0.0, 0}), InvalidFamilyParams);
  CHECK_THROWS_AS(build({"f_gamma_delta", 1.5, -0.1, 0}), InvalidFamilyParams);
  CHECK_THROWS_AS(build({"power_tail", 0.4, 0.0, 0}), InvalidFamilyParams);
  CHECK_THROWS_AS(build({"dyadic_log", 0.0, 0.0, 41}), InvalidFamilyParams);
  CHECK_THROWS_AS(build({"quadratic_plain", 0.0, 0.0, 1}), InvalidFamilyParams);
  CHECK_THROWS_AS(build({"no_such_family", 0.0, 0.0, 0}), InvalidFamilyParams);
}
