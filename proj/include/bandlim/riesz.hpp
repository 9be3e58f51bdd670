#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bandlim/spectrum.hpp"

namespace bandlim {

struct RieszConfig {
  double alpha = 1.0;
  int j = 1;
  double epsilon = 1e-3;

  void validate() const;
};

// 2 Gamma(a) cos(pi a / 2), with the removable values at negative odd integers.
double lambda_c(double a);

// (-1)^j 2^{2j - alpha} int_0^inf sin^{2j}(u) u^{-1-alpha} du.
double c_alpha(double alpha, int j);

// Integrals of s^{-1-alpha} sin^{2j}(s) split at x, with the multiplier built from them.
class RieszKernel {
 public:
  RieszKernel(double alpha, int j);

  double alpha() const { return alpha_; }
  int j() const { return j_; }
  // int_x^inf and int_0^x of s^{-1-alpha} sin^{2j} s ds.
  double upper(double x) const;
  double lower(double x) const;
  double total() const { return total_; }
  double constant() const;
  // |v|^alpha upper(eps |v| / 2) / total
  double eta(double v, double eps) const;
  // |v|^alpha - eta, computed without cancellation
  double eta_deficit(double v, double eps) const;
  // Bound sup |eta| <= 4^j / (alpha eps^alpha |C|).
  double eta_sup_bound(double eps) const;

 private:
  double series_lower(double x) const;
  double asymptotic_upper(double x) const;

  double alpha_;
  int j_;
  std::vector<double> series_;
  std::vector<double> nodes_;
  std::vector<double> node_upper_;
  double total_ = 0.0;
};

double eta(double v, double alpha, int j, double eps);

struct WeightedSpectrum {
  Spectrum base;
  std::function<cplx(double)> multiplier;
  std::string tag;
  // |multiplier(v)| <= C |v|^growth for large |v|
  double growth = 0.0;
};

cplx weighted_density(const WeightedSpectrum& w, double v);
double weighted_norm(const WeightedSpectrum& w);
cplx weighted_time_eval(const WeightedSpectrum& w, double t);

// Throws NotInSpace unless int |v|^{2 order} |f|^2 converges.
void require_weighted_l2(const Spectrum& s, double order);
bool in_weighted_l2(const Spectrum& s, double order);

WeightedSpectrum riesz_spectral(const Spectrum& s, double alpha);
WeightedSpectrum derivative_spectrum(const Spectrum& s, int order);
WeightedSpectrum hilbert_spectrum(const Spectrum& s);
WeightedSpectrum central_difference_spectrum(const Spectrum& s, int r, double h);
WeightedSpectrum eta_spectrum(const Spectrum& s, const RieszConfig& cfg);

struct SingularResult {
  std::vector<double> t;
  std::vector<cplx> values;
  std::vector<double> budgets;
  double u_max = 0.0;
};

// Default upper cutoff of the singular integral.
double default_u_max(double epsilon);

// (1/C) int_eps^{u_max} central difference / u^{1+alpha} du, plus the exact tail of the central term;
// budgets bound the remaining neighbour terms beyond u_max.
SingularResult riesz_singular(const Spectrum& s, const RieszConfig& cfg, const std::vector<double>& t_grid,
                              double u_max = 0.0);

// (1/sqrt(2 pi)) int eta f e^{ivt} dv.
cplx riesz_multiplier_side(const Spectrum& s, const RieszConfig& cfg, double t);

// ||(eta_eps - |v|^alpha) f||_2 for each eps.
std::vector<double> riesz_convergence(const Spectrum& s, double alpha, int j, const std::vector<double>& eps_list);

// ||(2 sin(hv/2)/h)^r - v^r) f||_2 for each h.
std::vector<double> riemann_check(const Spectrum& s, int r, const std::vector<double>& h_list);

}  // namespace bandlim
