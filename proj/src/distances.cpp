#include "bandlim/distances.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/errors.hpp"
#include "bandlim/smoothness.hpp"

namespace bandlim {

namespace {

void check_q(double q) {
  if (!(q >= 1.0 && q <= 2.0)) throw InvalidSpectrum("q must lie in [1, 2]");
}

// int_a^b v^{-q/2} (w0 (v/a)^{-s})^q dv for a power-law segment.
double power_segment(double a, double b, double w0, double s, double q) {
  const double e = 1.0 - q / 2.0 - q * s;
  const double scale = std::pow(w0, q) * std::pow(a, -q / 2.0);
  if (std::abs(e) < 1e-12) return scale * a * std::log(b / a);
  if (b == kInf) {
    if (e >= 0.0) throw NonConvergence("modulus decays too slowly for the derivative-free integral");
    return -scale * a / e;
  }
  return scale * a * (std::pow(b / a, e) - 1.0) / e;
}

double bound_from_samples(const std::vector<ModulusSample>& prof, double q, double sigma) {
  // Nodes in v = 1/delta, ascending.
  std::vector<std::pair<double, double>> nodes;
  for (auto it = prof.rbegin(); it != prof.rend(); ++it) nodes.push_back({1.0 / it->delta, it->value});
  std::sort(nodes.begin(), nodes.end());
  if (nodes.size() < 2) throw NonConvergence("derivative-free bound needs at least two grid points");
  for (const auto& n : nodes)
    if (!(n.second > 0.0)) return 0.0;
  auto slope = [&](size_t i) {
    return -std::log(nodes[i + 1].second / nodes[i].second) / std::log(nodes[i + 1].first / nodes[i].first);
  };
  if (sigma < nodes.front().first) throw NonConvergence("sigma lies below the delta grid");
  double total = 0.0;
  for (size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i].first, b = nodes[i + 1].first;
    if (b <= sigma) continue;
    const double s = slope(i);
    const double lo = std::max(a, sigma);
    const double w0 = nodes[i].second * std::pow(lo / a, -s);
    total += power_segment(lo, b, w0, s, q);
  }
  const size_t last = nodes.size() - 2;
  const double V = std::max(nodes.back().first, sigma);
  const double s = slope(last);
  const double w0 = nodes.back().second * std::pow(V / nodes.back().first, -s);
  total += power_segment(V, kInf, w0, s, q);
  return std::pow(total, 1.0 / q);
}

}  // namespace

double dist(const Spectrum& s, double q, double sigma) { return dist_derivative(s, q, sigma, 0); }

double dist_derivative(const Spectrum& s, double q, double sigma, int k) {
  check_q(q);
  if (sigma < 0.0) throw InvalidSpectrum("sigma must be nonnegative");
  if (k < 0) throw InvalidSpectrum("derivative order must be nonnegative");
  if (s.empty()) return 0.0;
  return std::pow(integrate_abs_q(s.pieces(), q, k * q, outside(sigma)), 1.0 / q);
}

double fractional_tail(const Spectrum& s, double sigma, double beta) {
  if (beta < 0.0) throw InvalidSpectrum("beta must be nonnegative");
  if (s.empty()) return 0.0;
  return integrate_abs_q(s.pieces(), 2.0, 2.0 * beta, outside(sigma));
}

double derivative_free_bound(const Spectrum& s, int r, double q, double sigma, const std::vector<double>& delta_grid) {
  check_q(q);
  if (!(sigma > 0.0)) throw InvalidSpectrum("sigma must be positive");
  return bound_from_samples(modulus_profile(s, r, delta_grid), q, sigma);
}

ConstantEstimate derivative_free_constant(const Spectrum& s, int r, double q, const std::vector<double>& sigmas,
                                          const std::vector<double>& delta_grid) {
  check_q(q);
  const auto prof = modulus_profile(s, r, delta_grid);
  ConstantEstimate est;
  for (double sg : sigmas) {
    const double b = bound_from_samples(prof, q, sg);
    const double d = dist(s, q, sg);
    est.sigmas.push_back(sg);
    est.ratios.push_back(b > 0.0 ? d / b : 0.0);
    est.max_ratio = std::max(est.max_ratio, est.ratios.back());
  }
  return est;
}

}  // namespace bandlim
