#include "bandlim/modulation.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/errors.hpp"
#include "bandlim/parallel.hpp"

namespace bandlim {

namespace {

constexpr long kExplicitTailBands = 256;
constexpr double kMaxBandsPerPiece = 1e7;

// int_x^{x (1 + stretch)} (sum amp v^-gamma)^2 dv for x > 0; stretch is passed separately so narrow
// bands far out keep full relative accuracy.
double tail_band_mass(const std::vector<TailTerm>& tails, double x, double stretch) {
  double total = 0.0;
  for (const auto& a : tails)
    for (const auto& b : tails) {
      const double e = a.gamma + b.gamma - 1.0;
      const double part = stretch == kInf ? std::pow(x, -e) / e
                                          : -std::pow(x, -e) * std::expm1(-e * std::log1p(stretch)) / e;
      total += a.amp * b.amp * part;
    }
  return total;
}

struct TailRegion {
  std::vector<TailTerm> tails;
  double start = kInf;  // tails-only region is |v| >= start
};

TailRegion tail_region(const Spectrum& s) {
  TailRegion tr;
  for (const auto& p : s.pieces())
    if (p.b == kInf) {
      tr.tails = p.tails;
      tr.start = p.a;
    }
  return tr;
}

// Sum of sqrt(scale * mass) over bands n >= first of the positive tails-only region, where band
// first starts at or below start and only its part above start is counted (added to carry).
BandSum tail_side(const TailRegion& tr, double w, double scale, double carry, const std::function<bool(long)>& inc) {
  BandSum out;
  const long first = static_cast<long>(std::floor(tr.start / w));
  const double first_mass = carry + tail_band_mass(tr.tails, tr.start, ((first + 1) * w - tr.start) / tr.start);
  if (inc(first)) out.value += std::sqrt(scale * first_mass);
  auto g = [&](double x) { return std::sqrt(scale * tail_band_mass(tr.tails, x * w, 1.0 / x)); };
  const long last = first + kExplicitTailBands;
  for (long n = first + 1; n <= last; ++n)
    if (inc(n)) out.value += g(static_cast<double>(n));
  double gmin = kInf;
  for (const auto& t : tr.tails) gmin = std::min(gmin, t.gamma);
  if (!(gmin > 1.0)) throw DivergentSum("band sum of a power tail with gamma <= 1 diverges");
  // Midpoint rule: sum_{n > last} g(n) ~ int_{last + 1/2}^inf g.
  out.value += semi_infinite_quadrature(g, last + 0.5, gmin, 1e-12);
  out.budget += std::abs(g(last) - g(last + 1.0));
  return out;
}

}  // namespace

std::map<long, double> band_masses(const Spectrum& s, double width) {
  if (!(width > 0.0)) throw InvalidSpectrum("band width must be positive");
  std::map<long, double> mass;
  if (s.empty()) return mass;
  for (const auto& p : s.pieces()) {
    if (!p.bounded()) continue;
    if (p.terms.empty() && p.tails.empty()) continue;
    const long lo = static_cast<long>(std::floor(p.a / width));
    const long hi = static_cast<long>(std::ceil(p.b / width)) - 1;
    if (hi - lo > kMaxBandsPerPiece) throw NonConvergence("piece spans too many bands");
    if (lo >= hi) {
      mass[lo] += piece_abs_q(p, 2.0, 0.0);
      continue;
    }
    for (long n = lo; n <= hi; ++n) {
      const double a = std::max(p.a, n * width), b = std::min(p.b, (n + 1) * width);
      if (b > a) mass[n] += piece_abs_q(restrict_piece(p, a, b), 2.0, 0.0);
    }
  }
  return mass;
}

BandSum band_sum(const Spectrum& s, double width, double scale, const std::function<bool(long)>& include) {
  BandSum out;
  if (s.empty()) return out;
  auto mass = band_masses(s, width);
  const TailRegion tr = tail_region(s);
  if (!tr.tails.empty()) {
    const long pos = static_cast<long>(std::floor(tr.start / width));
    // The band straddling -start on the negative side mirrors band pos on the positive side.
    const long neg = -pos - 1;
    double carry_pos = 0.0, carry_neg = 0.0;
    if (auto it = mass.find(pos); it != mass.end()) {
      carry_pos = it->second;
      mass.erase(it);
    }
    if (auto it = mass.find(neg); it != mass.end()) {
      carry_neg = it->second;
      mass.erase(it);
    }
    const BandSum right = tail_side(tr, width, scale, carry_pos, include);
    const BandSum left = tail_side(tr, width, scale, carry_neg, [&](long m) { return include(-m - 1); });
    out.value += right.value + left.value;
    out.budget += right.budget + left.budget;
  }
  for (const auto& [n, m] : mass)
    if (include(n)) out.value += std::sqrt(scale * m);
  return out;
}

BandSum m21_with_budget(const Spectrum& s) {
  BandSum b = band_sum(s, 1.0, 1.0, [](long) { return true; });
  if (s.trunc()) b.budget += s.trunc()->bound("m21");
  return b;
}

double m21_norm(const Spectrum& s) { return m21_with_budget(s).value; }

BandSum n_h_with_budget(const Spectrum& s, double h) {
  if (!(h > 0.0 && h <= 1.0)) throw InvalidSpectrum("h must lie in (0, 1]");
  return band_sum(s, 1.0 / h, 1.0 / h, [](long n) { return n != 0 && n != -1; });
}

double n_h(const Spectrum& s, double h) { return n_h_with_budget(s, h).value; }

std::vector<double> default_h_grid(const Spectrum& s) {
  std::vector<double> g;
  for (int k = 0; k <= 40; ++k) g.push_back(std::exp2(-k / 4.0));
  std::vector<std::pair<double, double>> marks;  // (L2 mass proxy, frequency)
  for (const auto& a : s.atoms()) {
    if (const auto* t = std::get_if<TriangleAtom>(&a)) {
      const double m = t->amp * t->amp / t->b;
      for (double f : {t->c, t->c - t->half_width(), t->c + t->half_width()}) marks.push_back({m, f});
    } else if (const auto* r = std::get_if<RectAtom>(&a)) {
      const double m = r->amp * r->amp * r->w;
      for (double f : {r->c, r->c - r->w, r->c + r->w}) marks.push_back({m, f});
    }
  }
  std::sort(marks.begin(), marks.end(), [](auto& x, auto& y) { return x.first > y.first; });
  if (marks.size() > 3 * 128) marks.resize(3 * 128);
  for (const auto& [m, f] : marks) {
    const double af = std::abs(f);
    if (af < 1.0) continue;
    for (int k = 1; k <= 2; ++k)
      if (k / af <= 1.0) g.push_back(k / af);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

ModulationProfile n_sup(const Spectrum& s, const std::vector<double>& h_grid) {
  ModulationProfile prof;
  prof.h_grid = h_grid.empty() ? default_h_grid(s) : h_grid;
  prof.values.assign(prof.h_grid.size(), 0.0);
  prof.budgets.assign(prof.h_grid.size(), 0.0);
  parallel_for(prof.h_grid.size(), [&](size_t i) {
    const BandSum b = n_h_with_budget(s, prof.h_grid[i]);
    prof.values[i] = b.value;
    prof.budgets[i] = b.budget;
  });
  for (double v : prof.values) prof.sup_lower_bound = std::max(prof.sup_lower_bound, v);
  prof.m21 = m21_norm(s);
  return prof;
}

DilationReport dilation_bounds_check(const Spectrum& s, double lambda) {
  if (!(lambda > 0.0)) throw InvalidSpectrum("lambda must be positive");
  DilationReport r;
  r.lambda = lambda;
  r.norm = m21_norm(s);
  r.norm_dilated = m21_norm(s.dilated(lambda));
  // p = 2, q = 1
  if (lambda >= 1.0) {
    r.lower = r.norm * std::pow(lambda, -1.5) / 6.0;
    r.upper = 3.0 * std::sqrt(lambda) * r.norm;
  } else {
    r.lower = std::sqrt(lambda) * r.norm / 3.0;
    r.upper = 6.0 * std::pow(lambda, -1.5) * r.norm;
  }
  const double slack = 1e-12 * r.norm;
  r.holds = r.lower <= r.norm_dilated + slack && r.norm_dilated <= r.upper + slack;
  return r;
}

MStarReport mstar_uniformity(const Spectrum& s, const std::vector<double>& h_grid, const std::vector<long>& n0_list) {
  MStarReport rep;
  rep.n0 = n0_list;
  rep.h_grid = h_grid;
  rep.tails.assign(n0_list.size(), std::vector<double>(h_grid.size(), 0.0));
  parallel_for(n0_list.size() * h_grid.size(), [&](size_t idx) {
    const size_t i = idx / h_grid.size(), k = idx % h_grid.size();
    const long n0 = n0_list[i];
    const double h = h_grid[k];
    if (!(h > 0.0 && h <= 1.0)) throw InvalidSpectrum("h must lie in (0, 1]");
    // band n covers [n/h, (n+1)/h], so n and -n-1 mirror each other; n0 = 1 drops the two central bands
    rep.tails[i][k] = band_sum(s, 1.0 / h, 1.0 / h, [n0](long n) { return n >= n0 || n < -n0; }).value;
  });
  for (const auto& row : rep.tails) rep.sup_per_n0.push_back(row.empty() ? 0.0 : *std::max_element(row.begin(), row.end()));
  if (!rep.sup_per_n0.empty()) {
    const double first = rep.sup_per_n0.front(), last = rep.sup_per_n0.back();
    rep.tails_vanish = last <= 1e-3 * std::max(first, 1e-300) || last == 0.0;
  }
  rep.note = "tail sups over a finite h grid can witness non-uniform convergence but cannot prove membership";
  return rep;
}

}  // namespace bandlim
