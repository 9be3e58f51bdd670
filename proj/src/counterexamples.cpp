#include "bandlim/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bandlim/distances.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/modulation.hpp"
#include "bandlim/rates.hpp"
#include "bandlim/riesz.hpp"
#include "bandlim/smoothness.hpp"

namespace bandlim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long kDirectTerms = 20000;

const double kBandNorm = 2.0 * std::sqrt(2.0 * kPi / 3.0);  // L2 norm of a unit-support atom

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Claim make_claim(std::string name, std::string expected, std::string observed, bool pass) {
  return {std::move(name), std::move(expected), std::move(observed), pass};
}

bool is(const FamilySpec& s, const char* name) { return s.name == name; }

bool dyadic(const FamilySpec& s) { return is(s, "dyadic_log") || is(s, "dyadic_sqrt"); }

// Amplitude p-series exponents (power, log power) of each family; dyadic_sqrt is geometric.
std::pair<double, double> amp_exponents(const FamilySpec& s) {
  if (is(s, "f_gamma_delta")) return {s.gamma, s.delta};
  if (is(s, "dyadic_log")) return {2.0, 0.0};
  if (is(s, "quadratic_ln34")) return {1.5, 0.75};
  if (is(s, "quadratic_plain")) return {1.5, 0.0};
  if (is(s, "quadratic_ln1")) return {1.5, 1.0};
  return {0.0, 0.0};
}

double amplitude(const FamilySpec& s, long n) {
  if (is(s, "dyadic_sqrt")) return std::exp2(-0.5 * n);
  const auto [p, q] = amp_exponents(s);
  double a = std::pow(static_cast<double>(n), -p);
  if (q != 0.0) a *= std::pow(std::log(static_cast<double>(n)), -q);
  return a;
}

double center(const FamilySpec& s, long n) {
  if (is(s, "f_gamma_delta")) return n + 0.5;
  if (dyadic(s)) return std::exp2(static_cast<double>(n)) - 0.5;
  return static_cast<double>(n) * n - 0.5;
}

TriangleAtom atom(const FamilySpec& s, long n) {
  const double b = is(s, "f_gamma_delta") ? 1.0 / (2.0 * kPi * n) : 1.0 / (4.0 * kPi);
  return {amplitude(s, n), b, center(s, n), 0.0};
}

Truncation truncation_of(const FamilySpec& s) {
  Truncation t;
  t.series = s.name;
  const long N = s.last_term();
  t.n_terms = N - s.first_term() + 1;
  const TriangleAtom next = atom(s, N + 1);
  t.omitted_from = next.c - next.half_width();
  auto& tb = t.tail_bounds;
  if (is(s, "dyadic_sqrt")) {
    const double geo = std::exp2(-0.5 * (N + 1)) / (1.0 - std::sqrt(0.5));
    tb["l2_sq"] = (8.0 * kPi / 3.0) * std::exp2(-static_cast<double>(N));
    tb["l1"] = std::sqrt(2.0 * kPi) * geo;
    tb["m21"] = kBandNorm * geo;
    tb["weighted_half"] = kInf;
    return t;
  }
  const auto [p, q] = amp_exponents(s);
  tb["l1"] = std::sqrt(2.0 * kPi) * power_log_tail(p, q, N);
  if (is(s, "f_gamma_delta")) {
    // Atom n: L2^2 = (4 pi n / 3) amp^2, inside [n, n + 1], |v| <= n + 1 on its support.
    tb["l2_sq"] = (4.0 * kPi / 3.0) * power_log_tail(2.0 * p - 1.0, 2.0 * q, N);
    tb["m21"] = std::sqrt(4.0 * kPi / 3.0) * power_log_tail(p - 0.5, q, N);
    tb["weighted_half"] = (4.0 * kPi / 3.0) * (1.0 + 1.0 / (N + 1.0)) * power_log_tail(2.0 * p - 2.0, 2.0 * q, N);
  } else {
    tb["l2_sq"] = (8.0 * kPi / 3.0) * power_log_tail(2.0 * p, 2.0 * q, N);
    tb["m21"] = kBandNorm * power_log_tail(p, q, N);
    tb["weighted_half"] = dyadic(s) ? kInf : (8.0 * kPi / 3.0) * power_log_tail(2.0 * p - 2.0, 2.0 * q, N);
  }
  return t;
}

FamilySpec with_n(FamilySpec s, long n) {
  s.N = n;
  return s;
}

std::vector<Point> dist_points(const Spectrum& s, double lo, double hi, int n) {
  std::vector<Point> pts;
  for (double sg : log_grid(lo, hi, n)) pts.push_back({sg, std::sqrt(series_dist2(s, sg))});
  return pts;
}

// ------------------------------------------------------------------ per family

void report_f_gamma_delta(const FamilySpec& spec, MembershipReport& rep) {
  const double g = spec.gamma, d = spec.delta, alpha = g - 1.0;
  const Spectrum S = build(spec);
  const Spectrum wide = build(with_n(spec, std::max<long>(spec.last_term(), 4100)));

  const double l1 = l1_spectral_norm(S) + S.trunc()->bound("l1");
  rep.claims.push_back(make_claim("F2: integrable spectrum", "finite L1 norm", fmt(l1), std::isfinite(l1)));

  const auto pts = dist_points(wide, 16.0, 4096.0, 17);
  if (d == 0.0) {
    const RateFit fit = loglog_fit(pts);
    rep.claims.push_back(make_claim("Lip_r(alpha): dist slope", "slope -" + fmt(alpha) + " +- 0.05, r2 >= 0.99",
                                    "slope " + fmt(fit.slope) + ", r2 " + fmt(fit.r_squared),
                                    std::abs(fit.slope + alpha) <= 0.05 && fit.r_squared >= 0.99));
    bool below_ok = true;
    double worst = kInf;
    for (const auto& [sg, dv] : pts) {
      const double lb = 4.0 * kPi * std::pow(sg + 2.0, -2.0 * g + 2.0) / (3.0 * (2.0 * g - 2.0));
      worst = std::min(worst, dv * dv / lb);
      below_ok = below_ok && dv * dv >= lb;
    }
    rep.claims.push_back(make_claim("tail lower bound 4pi(sigma+2)^(2-2gamma)/(3(2gamma-2))", "ratio >= 1",
                                    "min ratio " + fmt(worst), below_ok));
    std::vector<Point> sq;
    for (const auto& [x, y] : pts) sq.push_back({x, y * y});
    const auto tr = oh_vs_big_oh(sq, 2.0 * alpha, Limit::ToInfinity);
    rep.claims.push_back(make_claim("not lip_r(alpha): dist^2 sigma^(2 alpha)", to_string(Verdict::BigOTight),
                                    to_string(tr.verdict) + " (trend " + fmt(tr.trend) + ")",
                                    tr.verdict == Verdict::BigOTight));
    const auto over = oh_vs_big_oh(pts, alpha + 0.1, Limit::ToInfinity);
    rep.claims.push_back(make_claim("not Lip_r(alpha + 0.1): dist sigma^(alpha + 0.1) grows", "trend > 1",
                                    "trend " + fmt(over.trend), over.trend > 1.0));
  } else {
    std::vector<Point> sq;
    for (const auto& [x, y] : pts) sq.push_back({x, y * y});
    const auto tr = oh_vs_big_oh(sq, 2.0 * alpha, Limit::ToInfinity);
    rep.claims.push_back(make_claim("lip_r(alpha): dist^2 sigma^(2 alpha) -> 0", to_string(Verdict::LittleO),
                                    to_string(tr.verdict) + " (trend " + fmt(tr.trend) + ")",
                                    tr.verdict == Verdict::LittleO));
    if (2.0 * d <= 1.0) {
      const double partial = fractional_tail(S, 0.0, alpha);
      double analytic = 0.0;
      for (long n = 2; n <= spec.last_term(); ++n)
        analytic += (4.0 * kPi / 3.0) / (n * std::pow(std::log(static_cast<double>(n)), 2.0 * d));
      const bool diverges = std::isinf(power_log_tail(1.0, 2.0 * d, spec.last_term()));
      rep.claims.push_back(make_claim("not in W^{alpha,2}_R: weighted partial sums diverge",
                                      "partial >= (4pi/3) sum 1/(n ln^{2 delta} n), series divergent",
                                      "partial " + fmt(partial) + " vs " + fmt(analytic),
                                      partial >= analytic * (1.0 - 1e-9) && diverges));
    }
  }

  const bool m21_expected = (g - 0.5 > 1.0) || (g - 0.5 == 1.0 && d > 1.0);
  const double m21 = m21_norm(S) + S.trunc()->bound("m21");
  rep.claims.push_back(make_claim(m21_expected ? "M21: finite norm" : "not in M21: band sum diverges",
                                  m21_expected ? "finite" : "infinite", fmt(m21), std::isfinite(m21) == m21_expected));

  if (g == 1.5 && d == 1.0) {
    // Sample decay |f(hk)| <= 2 (1 + 2/h^2) / (|k|^{1/2} ln|k|) for |k| > 80.
    bool ok = true;
    double worst = 0.0;
    const long far = 4000000;
    const double far_tail = power_log_tail(1.5, 1.0, far);
    for (double h : {1.0, 0.5})
      for (long k : {100L, 1000L, 10000L, -300L}) {
        const double ak = std::abs(static_cast<double>(k));
        const double bound = 2.0 * (1.0 + 2.0 / (h * h)) / (std::sqrt(ak) * std::log(ak));
        // Omitted atoms are bounded termwise by amp_n sinc^2(h k / (2 pi n)), then by amp_n.
        double omitted = far_tail;
        for (long n = spec.last_term() + 1; n <= far; ++n)
          omitted += amplitude(spec, n) * std::pow(sinc(h * ak / (2.0 * kPi * n)), 2);
        const double val = std::abs(time_eval(S, h * k)) + omitted;
        worst = std::max(worst, val / bound);
        ok = ok && val <= bound;
      }
    rep.claims.push_back(make_claim("S_h^2: sample decay bound", "|f(hk)| <= 2(1+2/h^2)/(|k|^{1/2} ln|k|)",
                                    "max ratio " + fmt(worst), ok));
  }
}

void report_dyadic_log(const FamilySpec& spec, MembershipReport& rep) {
  const Spectrum S = build(spec);
  const BandSum m = m21_with_budget(S);
  const double target = (kPi * kPi / 3.0) * std::sqrt(2.0 * kPi / 3.0);
  rep.claims.push_back(make_claim("M21: norm (pi^2/3) sqrt(2pi/3)", fmt(target) + " within budget",
                                  fmt(m.value) + " (budget " + fmt(m.budget) + ")",
                                  std::abs(m.value - target) <= m.budget + 1e-12));
  bool ok = true;
  std::string obs;
  for (int k = 1; k <= 10; ++k) {
    // For h = 2^-k every omitted atom n > N >= k fills a band of its own, so its share of N_h is
    // exactly h^{-1/2} times its unit-band norm and the full value is the truncated one plus that.
    const double v = n_h(S, std::exp2(-k)) + std::exp2(0.5 * k) * S.trunc()->bound("m21");
    const double lb = std::sqrt(2.0 * kPi / 3.0) * std::exp2(0.5 * k + 1.0) / (k + 1.0);
    ok = ok && v >= lb;
    if (k == 10) obs = "N_{2^-10} = " + fmt(v) + " >= " + fmt(lb);
  }
  rep.claims.push_back(
      make_claim("not in Mn: N_{2^-k} >= sqrt(2pi/3) 2^{k/2+1}/(k+1), k = 1..10", "all hold, bound unbounded", obs, ok));
  ok = true;
  for (double sg : {4.0, 16.0, 256.0, 4096.0}) {
    const double lb = (2.0 * std::sqrt(2.0 * kPi) / 3.0) * std::pow(std::log(2.0) / (3.0 * std::log(sg)), 1.5);
    ok = ok && std::sqrt(series_dist2(S, sg)) >= lb;
  }
  rep.claims.push_back(make_claim("dist_2 lower bound at sigma = 4, 16, 256, 4096", "all hold", ok ? "all hold" : "violated", ok));
  const Spectrum wide = build(with_n(spec, 40));
  const RateFit early = loglog_fit(dist_points(wide, 16.0, 4096.0, 9));
  const RateFit late = loglog_fit(dist_points(wide, std::exp2(24.0), std::exp2(36.0), 9));
  rep.claims.push_back(make_claim("not Lip_r(alpha) for any alpha > 0: dist slope flattens",
                                  "late slope > -0.1 and flatter than early slope",
                                  "early " + fmt(early.slope) + ", late " + fmt(late.slope),
                                  late.slope > -0.1 && late.slope > early.slope));
}

void report_dyadic_sqrt(const FamilySpec& spec, MembershipReport& rep) {
  const Spectrum S = build(spec);
  const double bound = 4.0 / (std::sqrt(2.0) - 1.0) * std::sqrt(kPi / 3.0);
  const auto prof = n_sup(S);
  rep.claims.push_back(make_claim("Mn: N_h <= 4/(sqrt2 - 1) sqrt(pi/3) on the grid", "sup <= " + fmt(bound),
                                  "sup " + fmt(prof.sup_lower_bound), prof.sup_lower_bound <= bound));
  bool ok = true;
  std::string obs;
  for (long M = 2; M <= std::min<long>(spec.last_term(), 30); ++M) {
    const double part = integrate_abs_q(S.pieces(), 2.0, 1.0, band(0.0, std::exp2(static_cast<double>(M))));
    ok = ok && part >= (8.0 * kPi / 3.0) * (M - 1);
    obs = "M = " + std::to_string(M) + ": " + fmt(part) + " >= " + fmt((8.0 * kPi / 3.0) * (M - 1));
  }
  rep.claims.push_back(make_claim("not in W^{1/2,2}_R: int_0^{2^M} |v||f|^2 >= (8pi/3)(M-1)", "all M <= 30", obs, ok));
  const double m21 = m21_norm(S) + S.trunc()->bound("m21");
  rep.claims.push_back(make_claim("M21: finite norm", "finite", fmt(m21), std::isfinite(m21)));
  std::vector<Point> pts;
  double worst = kInf;
  for (int k = 1; k <= 12; ++k) {
    const double dk = kPi * std::exp2(-k);
    const double w = modulus(S, 1, dk);
    pts.push_back({dk, w});
    worst = std::min(worst, w / std::sqrt(dk));
  }
  const auto tr = oh_vs_big_oh(pts, -0.5, Limit::ToZero);
  rep.claims.push_back(make_claim("not lip(1/2): omega_1(f; pi 2^-k) / (pi 2^-k)^{1/2}",
                                  ">= sqrt(8/3) and " + to_string(Verdict::BigOTight),
                                  "min " + fmt(worst) + ", " + to_string(tr.verdict),
                                  worst >= std::sqrt(8.0 / 3.0) * (1.0 - 1e-3) && tr.verdict == Verdict::BigOTight));
}

double ln34_bound(double k) {
  return (2.0 * std::sqrt(kPi) / 3.0) * std::pow(std::log(2.0 * k), 0.25) *
         std::log(std::log(k * k * k / 36.0) / std::log(2.0 * k));
}

void report_quadratic(const FamilySpec& spec, MembershipReport& rep) {
  const Spectrum S = build(spec);
  const double l1 = l1_spectral_norm(S) + S.trunc()->bound("l1");
  rep.claims.push_back(make_claim("F2: integrable spectrum", "finite L1 norm", fmt(l1), std::isfinite(l1)));
  const double weighted = integrate_abs_q(S.pieces(), 2.0, 1.0, whole_line());
  const double wtail = S.trunc()->bound("weighted_half");
  const std::vector<double> ks{13, 16, 20, 24, 32, 40, 48};

  if (is(spec, "quadratic_ln34")) {
    rep.claims.push_back(make_claim("W^{1/2,2}_R: int |v||f|^2 finite", "finite",
                                    fmt(weighted) + " + tail " + fmt(wtail), std::isfinite(wtail)));
    bool ok = true;
    std::string obs;
    for (double k : ks) {
      const double v = n_h(S, 1.0 / (k * k));
      ok = ok && v >= ln34_bound(k);
      obs = "N_{1/48^2} = " + fmt(v) + " >= " + fmt(ln34_bound(k));
    }
    ok = ok && ln34_bound(ks.back()) > ln34_bound(ks.front());
    rep.claims.push_back(make_claim("not in Mn: N_{k^-2} above an unbounded lower bound, k = 13..48",
                                    "all hold, bound increasing", obs, ok));
  } else if (is(spec, "quadratic_plain")) {
    double analytic = 0.0;
    for (long n = 2; n <= spec.last_term(); ++n) analytic += (8.0 * kPi / 3.0) * (n * n - 1.0) / (1.0 * n * n * n);
    rep.claims.push_back(make_claim("not in W^{1/2,2}_R: int |v||f|^2 partial sums diverge",
                                    "partial >= (8pi/3) sum (n^2-1)/n^3, series divergent",
                                    fmt(weighted) + " vs " + fmt(analytic),
                                    weighted >= analytic * (1.0 - 1e-9) && std::isinf(wtail)));
    const Spectrum wide = build(with_n(spec, std::max<long>(spec.last_term(), 70)));
    const auto pts = dist_points(wide, 16.0, 4096.0, 17);
    const RateFit fit = loglog_fit(pts);
    rep.claims.push_back(make_claim("Lip_r(1/2): dist slope", "slope -0.5 +- 0.05", "slope " + fmt(fit.slope),
                                    std::abs(fit.slope + 0.5) <= 0.05));
    // The ln34 band-counting argument with the log factor removed gives
    // N_{k^-2} >= (2 sqrt(pi)/3) ln(k^2/72) for k > 12.
    bool ok = true;
    std::string obs;
    auto plain_bound = [](double k) { return (2.0 * std::sqrt(kPi) / 3.0) * std::log(k * k / 72.0); };
    for (double k : ks) {
      const double v = n_h(S, 1.0 / (k * k));
      ok = ok && v >= plain_bound(k);
      obs = "N_{1/48^2} = " + fmt(v) + " >= " + fmt(plain_bound(k));
    }
    rep.claims.push_back(make_claim("not in Mn: N_{k^-2} >= (2 sqrt(pi)/3) ln(k^2/72), k = 13..48",
                                    "all hold, bound increasing", obs, ok && plain_bound(ks.back()) > plain_bound(ks.front())));
  } else {
    rep.claims.push_back(make_claim("W^{1/2,2}_R: int |v||f|^2 finite", "finite",
                                    fmt(weighted) + " + tail " + fmt(wtail), std::isfinite(wtail)));
    bool ok = true;
    double worst = 0.0;
    for (double h : default_h_grid(S)) {
      long nh = 2;
      while (!(nh * h > 1.0 / 16.0)) ++nh;
      const double b = 4.0 * std::sqrt(kPi) * std::log(nh) / std::log(2.0 / h) +
                       32.0 * std::sqrt(kPi / 3.0) / std::log(static_cast<double>(nh));
      const double v = n_h(S, h);
      worst = std::max(worst, v / b);
      ok = ok && v <= b;
    }
    rep.claims.push_back(make_claim("Mn: N_h below its h-dependent bound on the grid", "ratio <= 1",
                                    "max ratio " + fmt(worst), ok));
    std::vector<double> hs;
    for (int k = 0; k <= 26; ++k) hs.push_back(std::exp2(-0.5 * k));
    const auto ms = mstar_uniformity(S, hs, {1, 2, 4, 8, 16});
    ok = true;
    for (double v : ms.sup_per_n0) ok = ok && v >= std::sqrt(kPi / 3.0);
    rep.claims.push_back(make_claim("not in M21_*: tail sup over h stays >= sqrt(pi/3) for n0 = 1..16",
                                    "all n0", "sup at n0 = 16: " + fmt(ms.sup_per_n0.back()), ok));
  }
}

void report_power_tail(const FamilySpec& spec, MembershipReport& rep) {
  const double g = spec.gamma;
  const Spectrum S = build(spec);
  const double beta = g - 0.55, alpha = g - 0.45;
  if (beta > 0.0) {
    bool ok = true;
    double val = 0.0;
    try {
      val = weighted_norm(riesz_spectral(S, beta));
    } catch (const NotInSpace&) {
      ok = false;
    }
    rep.claims.push_back(make_claim("W^{beta,2}_R for beta = gamma - 0.55", "accepted", ok ? fmt(val) : "rejected", ok));
  }
  rep.claims.push_back(make_claim("not in W^{gamma-1/2,2}_R", "rejected by the tail criterion",
                                  in_weighted_l2(S, g - 0.5) ? "accepted" : "rejected", !in_weighted_l2(S, g - 0.5)));
  std::vector<Point> pts;
  for (double sg : log_grid(16.0, 4096.0, 17)) pts.push_back({sg, dist(S, 2.0, sg)});
  const RateFit fit = loglog_fit(pts);
  const auto tr = oh_vs_big_oh(pts, alpha, Limit::ToInfinity);
  rep.claims.push_back(make_claim("not Lip_r(alpha) for alpha = gamma - 0.45", "dist slope -(gamma - 1/2), trend > 1",
                                  "slope " + fmt(fit.slope) + ", trend " + fmt(tr.trend),
                                  std::abs(fit.slope + g - 0.5) <= 1e-6 && tr.trend > 1.0));
  if (g > 1.0) {
    rep.claims.push_back(make_claim("W^{1/2,2}_R", "accepted", in_weighted_l2(S, 0.5) ? "accepted" : "rejected",
                                    in_weighted_l2(S, 0.5)));
    const auto prof = n_sup(S);
    const double at_one = prof.values.back();
    double small = 0.0;
    for (size_t i = 0; i < 4 && i < prof.values.size(); ++i) small = std::max(small, prof.values[i]);
    rep.claims.push_back(make_claim("Mn: N_h bounded, decaying as h -> 0", "values at the four smallest h <= N_1",
                                    "sup " + fmt(prof.sup_lower_bound) + ", small-h max " + fmt(small),
                                    std::isfinite(prof.sup_lower_bound) && small <= at_one));
  }
  bool m21_finite = true;
  double m21 = kInf;
  try {
    m21 = m21_norm(S);
  } catch (const DivergentSum&) {
    m21_finite = false;
  }
  rep.claims.push_back(make_claim("M21 iff gamma > 1", g > 1.0 ? "finite" : "divergent", fmt(m21), m21_finite == (g > 1.0)));
}

}  // namespace

void FamilySpec::validate() const {
  const auto& names = family_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw InvalidFamilyParams("unknown family '" + name + "'");
  if (name == "f_gamma_delta" && !(gamma > 1.0 && delta >= 0.0))
    throw InvalidFamilyParams("f_gamma_delta needs gamma > 1 and delta >= 0");
  if (name == "power_tail" && !(gamma > 0.5)) throw InvalidFamilyParams("power_tail needs gamma > 1/2");
  if (N != 0 && N < 2) throw InvalidFamilyParams("N must be at least 2");
  if (name.rfind("dyadic", 0) == 0 && last_term() > 40) throw InvalidFamilyParams("dyadic families allow N <= 40");
}

long FamilySpec::first_term() const { return name.rfind("dyadic", 0) == 0 ? 1 : 2; }

long FamilySpec::last_term() const {
  if (N != 0) return N;
  if (name.rfind("dyadic", 0) == 0) return 32;
  if (name.rfind("quadratic", 0) == 0) return 512;
  return 256;
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"f_gamma_delta",   "dyadic_log",   "dyadic_sqrt", "quadratic_ln34",
                                              "quadratic_plain", "quadratic_ln1", "power_tail"};
  return names;
}

Spectrum build(const FamilySpec& spec) {
  spec.validate();
  if (spec.name == "power_tail") return Spectrum({}, {PowerTail{spec.gamma, 1.0, 1.0}});
  std::vector<Atom> atoms;
  for (long n = spec.first_term(); n <= spec.last_term(); ++n) atoms.push_back(atom(spec, n));
  return Spectrum(std::move(atoms), {}, truncation_of(spec));
}

Spectrum dyadic_sqrt_antiderivative(long N) {
  if (N < 1 || N > 40) throw InvalidFamilyParams("antiderivative series allows 1 <= N <= 40");
  FamilySpec spec;
  spec.name = "dyadic_sqrt";
  std::vector<Atom> atoms;
  for (long n = 1; n <= N; ++n) {
    TriangleAtom a = atom(spec, n);
    a.amp /= a.c;
    atoms.push_back(a);
  }
  return Spectrum(std::move(atoms));
}

double band_l2(const FamilySpec& spec, long n) {
  spec.validate();
  if (spec.name == "power_tail") {
    // int over [n, n+1] of |v|^{-2 gamma}, mirrored for negative bands, zero inside (-1, 1).
    const long m = n >= 0 ? n : -n - 1;
    if (m < 1) return 0.0;
    const double e = 2.0 * spec.gamma - 1.0;
    const double x = static_cast<double>(m);
    return std::sqrt(-std::pow(x, -e) * std::expm1(-e * std::log1p(1.0 / x)) / e);
  }
  if (spec.name == "f_gamma_delta") {
    if (n < 2) return 0.0;
    return std::sqrt(4.0 * kPi * n / 3.0) * amplitude(spec, n);
  }
  // Atom k occupies exactly [c_k - 1/2, c_k + 1/2].
  for (long k = spec.first_term();; ++k) {
    const double lo = center(spec, k) - 0.5;
    if (lo > n) return 0.0;
    if (lo == n) return kBandNorm * amplitude(spec, k);
  }
}

double power_log_tail(double p, double q, long N) {
  if (p < 1.0 || (p == 1.0 && q <= 1.0)) return kInf;
  double direct = 0.0;
  const long start = std::max<long>(N + 1, 2);
  const long stop = start + kDirectTerms;
  for (long n = start; n < stop; ++n) {
    const double x = static_cast<double>(n);
    direct += std::pow(x, -p) * (q != 0.0 ? std::pow(std::log(x), -q) : 1.0);
  }
  const double X = stop - 0.5;
  double rest;
  if (q == 0.0) {
    rest = std::pow(X, 1.0 - p) / (p - 1.0);
  } else if (p == 1.0) {
    rest = std::pow(std::log(X), 1.0 - q) / (q - 1.0);
  } else {
    auto f = [p, q](double x) { return std::pow(x, -p) * std::pow(std::log(x), -q); };
    rest = semi_infinite_quadrature(f, X, p, 1e-12);
  }
  return direct + rest;
}

double series_dist2(const Spectrum& truncated, double sigma) {
  const double d = dist(truncated, 2.0, sigma);
  double sq = d * d;
  if (const auto& t = truncated.trunc()) {
    if (sigma > t->omitted_from) throw NonConvergence("sigma lies inside the omitted part of the series");
    sq += t->bound("l2_sq");
  }
  return sq;
}

bool MembershipReport::all_pass() const {
  return !claims.empty() && std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

MembershipReport membership_report(const FamilySpec& spec) {
  spec.validate();
  MembershipReport rep;
  rep.family = spec.name;
  rep.spec = spec;
  rep.note = "finite-witness checks on truncated series; band sums of a truncation are lower bounds for the full "
             "series, and M21_* is falsified, never proven";
  if (spec.name == "f_gamma_delta") {
    report_f_gamma_delta(spec, rep);
  } else if (spec.name == "dyadic_log") {
    report_dyadic_log(spec, rep);
  } else if (spec.name == "dyadic_sqrt") {
    report_dyadic_sqrt(spec, rep);
  } else if (spec.name == "power_tail") {
    report_power_tail(spec, rep);
  } else {
    report_quadratic(spec, rep);
  }
  return rep;
}

}  // namespace bandlim
