#pragma once

#include <vector>

#include "bandlim/rates.hpp"
#include "bandlim/spectrum.hpp"

namespace bandlim {

struct ModulusSample {
  int r = 1;
  double delta = 0.0;
  double value = 0.0;
};

inline constexpr int kModulusGrid = 64;
// Grid ratio 2^{-1/steps_per_octave}.
inline constexpr int kStepsPerOctave = 4;

// ||Delta_h^r f||_2 from the spectral multiplier (2 sin(hv/2))^r.
double difference_norm(const Spectrum& s, int r, double h);

// delta * 2^{-i/4} for i = 0..grid_size.
std::vector<double> modulus_grid(double delta, int grid_size = kModulusGrid);

// Max of difference_norm over modulus_grid(delta); a lower bound for omega_r(f; delta).
double modulus(const Spectrum& s, int r, double delta, int grid_size = kModulusGrid);

// Cumulative max over the union of all per-delta grids, so values are nondecreasing in delta and
// each value is at least modulus(s, r, delta).
std::vector<ModulusSample> modulus_profile(const Spectrum& s, int r, const std::vector<double>& deltas,
                                           int grid_size = kModulusGrid);

// sup_{k <= k_max} 2^{alpha k} (int_{band k} |f|^2)^{1/2}; band 0 is |v| <= 1, band k is 2^{k-1} < |v| <= 2^k.
double besov_seminorm(const Spectrum& s, double alpha, int k_max);

// Fit of log modulus against log delta over a log grid.
RateFit lipschitz_slope(const Spectrum& s, int r, double delta_min, double delta_max, int n_points);

// max over the grid of h^{-alpha} ||Delta_h^r f||; lower bound for the Lipschitz seminorm.
double lipschitz_seminorm_lower(const Spectrum& s, int r, double alpha, const std::vector<double>& h_grid);

}  // namespace bandlim
