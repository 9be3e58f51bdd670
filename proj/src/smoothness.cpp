#include "bandlim/smoothness.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/errors.hpp"
#include "bandlim/parallel.hpp"

namespace bandlim {

double difference_norm(const Spectrum& s, int r, double h) {
  if (r < 1) throw InvalidSpectrum("difference order must be >= 1");
  if (!(h > 0.0)) throw InvalidSpectrum("step must be positive");
  if (s.empty()) return 0.0;
  const double sq = integrate_sq_sin_power(s.pieces(), r, h, whole_line());
  return std::sqrt(std::max(sq, 0.0));
}

std::vector<double> modulus_grid(double delta, int grid_size) {
  std::vector<double> g(grid_size + 1);
  for (int i = 0; i <= grid_size; ++i) g[i] = delta * std::exp2(-static_cast<double>(i) / kStepsPerOctave);
  return g;
}

double modulus(const Spectrum& s, int r, double delta, int grid_size) {
  if (!(delta > 0.0)) throw InvalidSpectrum("delta must be positive");
  const auto grid = modulus_grid(delta, grid_size);
  std::vector<double> vals(grid.size());
  parallel_for(grid.size(), [&](size_t i) { vals[i] = difference_norm(s, r, grid[i]); });
  return *std::max_element(vals.begin(), vals.end());
}

std::vector<ModulusSample> modulus_profile(const Spectrum& s, int r, const std::vector<double>& deltas,
                                           int grid_size) {
  std::vector<double> hs;
  for (double d : deltas) {
    if (!(d > 0.0)) throw InvalidSpectrum("delta must be positive");
    const auto g = modulus_grid(d, grid_size);
    hs.insert(hs.end(), g.begin(), g.end());
  }
  std::sort(hs.begin(), hs.end());
  // Merge points that coincide up to rounding of the exp2 grid.
  std::vector<double> uniq;
  for (double h : hs)
    if (uniq.empty() || h > uniq.back() * (1.0 + 1e-12)) uniq.push_back(h);
  std::vector<double> vals(uniq.size());
  parallel_for(uniq.size(), [&](size_t i) { vals[i] = difference_norm(s, r, uniq[i]); });
  for (size_t i = 1; i < vals.size(); ++i) vals[i] = std::max(vals[i], vals[i - 1]);
  std::vector<ModulusSample> out;
  for (double d : deltas) {
    auto it = std::upper_bound(uniq.begin(), uniq.end(), d * (1.0 + 1e-12));
    const size_t idx = static_cast<size_t>(it - uniq.begin()) - 1;
    out.push_back({r, d, vals[idx]});
  }
  return out;
}

double besov_seminorm(const Spectrum& s, double alpha, int k_max) {
  if (!(alpha > 0.0)) throw InvalidSpectrum("alpha must be positive");
  if (s.empty()) return 0.0;
  const auto& pieces = s.pieces();
  double best = std::sqrt(integrate_abs_q(pieces, 2.0, 0.0, inside(1.0)));
  for (int k = 1; k <= k_max; ++k) {
    const double lo = std::exp2(k - 1), hi = std::exp2(k);
    const Region reg{{-hi, -lo}, {lo, hi}};
    best = std::max(best, std::exp2(alpha * k) * std::sqrt(integrate_abs_q(pieces, 2.0, 0.0, reg)));
  }
  return best;
}

RateFit lipschitz_slope(const Spectrum& s, int r, double delta_min, double delta_max, int n_points) {
  if (!(delta_min > 0.0) || !(delta_max > delta_min)) throw DegenerateFit("need 0 < delta_min < delta_max");
  const auto deltas = log_grid(delta_min, delta_max, n_points);
  const auto prof = modulus_profile(s, r, deltas);
  std::vector<Point> pts;
  for (const auto& m : prof) pts.push_back({m.delta, m.value});
  return loglog_fit(pts);
}

double lipschitz_seminorm_lower(const Spectrum& s, int r, double alpha, const std::vector<double>& h_grid) {
  std::vector<double> vals(h_grid.size());
  parallel_for(h_grid.size(), [&](size_t i) { vals[i] = std::pow(h_grid[i], -alpha) * difference_norm(s, r, h_grid[i]); });
  return vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
}

}  // namespace bandlim
