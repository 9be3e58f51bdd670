#pragma once

#include <vector>

#include "bandlim/spectrum.hpp"

namespace bandlim {

// (int_{|v| >= sigma} |f(v)|^q dv)^{1/q}, q in [1, 2].
double dist(const Spectrum& s, double q, double sigma);

// Same with the weight |v|^{kq}, i.e. the distance of the k-th derivative.
double dist_derivative(const Spectrum& s, double q, double sigma, int k);

// int_{|v| >= sigma} |v|^{2 beta} |f(v)|^2 dv.
double fractional_tail(const Spectrum& s, double sigma, double beta);

// (int_sigma^inf v^{-q/2} omega_r(f, 1/v)^q dv)^{1/q} with omega interpolated log-linearly from
// samples on delta_grid and extended below the grid by the power law of its two smallest points.
double derivative_free_bound(const Spectrum& s, int r, double q, double sigma, const std::vector<double>& delta_grid);

// Empirical constant: max of dist / derivative_free_bound over a sigma sweep.
struct ConstantEstimate {
  std::vector<double> sigmas;
  std::vector<double> ratios;
  double max_ratio = 0.0;
};
ConstantEstimate derivative_free_constant(const Spectrum& s, int r, double q, const std::vector<double>& sigmas,
                                          const std::vector<double>& delta_grid);

}  // namespace bandlim
