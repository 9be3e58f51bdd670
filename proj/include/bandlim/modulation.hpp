#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bandlim/spectrum.hpp"

namespace bandlim {

struct BandSum {
  double value = 0.0;
  // Error bound of the closed-form tail estimate plus any truncation bound.
  double budget = 0.0;
};

// int_{n w}^{(n+1) w} |f|^2 for every band meeting a bounded piece.
std::map<long, double> band_masses(const Spectrum& s, double width);

// sum over included n of sqrt(scale * band mass); power-tail bands past the last piece are summed
// explicitly for a while and then by an integral estimate.
BandSum band_sum(const Spectrum& s, double width, double scale, const std::function<bool(long)>& include);

// sum_n ||f||_{L2[n, n+1]}; the budget includes the truncation bound of a truncated series.
BandSum m21_with_budget(const Spectrum& s);
double m21_norm(const Spectrum& s);

// sum_{n not in {-1, 0}} ((1/h) int_{n/h}^{(n+1)/h} |f|^2)^{1/2}, 0 < h <= 1.
BandSum n_h_with_budget(const Spectrum& s, double h);
double n_h(const Spectrum& s, double h);

struct ModulationProfile {
  std::vector<double> h_grid;
  std::vector<double> values;
  std::vector<double> budgets;
  double sup_lower_bound = 0.0;
  double m21 = 0.0;
};

// {2^{-k/4} : 0 <= k <= 40} plus steps that align band edges with atom centers and support edges.
std::vector<double> default_h_grid(const Spectrum& s);

// Lower bound for the sup over 0 < h <= 1; an empty grid selects default_h_grid.
ModulationProfile n_sup(const Spectrum& s, const std::vector<double>& h_grid = {});

struct DilationReport {
  double lambda = 1.0;
  double norm = 0.0;
  double norm_dilated = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool holds = false;
};

// Amalgam (2,1) norm of v -> f(lambda v) against the two-sided dilation bounds.
DilationReport dilation_bounds_check(const Spectrum& s, double lambda);

struct MStarReport {
  std::vector<long> n0;
  std::vector<double> h_grid;
  // tails[i][k]: sum over bands n >= n0[i] and their mirrors n < -n0[i] at h_grid[k]
  std::vector<std::vector<double>> tails;
  std::vector<double> sup_per_n0;
  bool tails_vanish = false;
  std::string note;
};

MStarReport mstar_uniformity(const Spectrum& s, const std::vector<double>& h_grid, const std::vector<long>& n0_list);

}  // namespace bandlim
