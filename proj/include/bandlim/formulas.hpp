#pragma once

#include <vector>

#include "bandlim/spectrum.hpp"

namespace bandlim {

// approx + remainder = exact; |remainder| <= bound + truncation_budget under the theorem's hypotheses.
struct RemainderReport {
  cplx approx;
  cplx exact;
  cplx remainder;
  double bound = 0.0;
  double truncation_budget = 0.0;

  bool holds() const;
  // |remainder| / bound, 0 when the bound vanishes.
  double ratio() const;
};

struct SeriesValue {
  cplx value;
  double budget = 0.0;
  long K = 0;
};

// Samples f(hk), k = -K..K; K = 0 picks the default for the largest |t| in t_max.
long default_sample_count(const Spectrum& s, double h, double t_max = 0.0);
std::vector<cplx> samples(const Spectrum& s, double h, long K);

// sum_{|k| <= K} f(hk) sinc(t/h - k) with a bound on the omitted terms.
SeriesValue wks_series(const Spectrum& s, double h, double t, long K = 0);
std::vector<SeriesValue> wks_series(const Spectrum& s, double h, const std::vector<double>& ts, long K = 0);

// Remainder from the band decomposition of the spectrum; k_freq = 0 covers the whole support.
cplx wks_remainder_spectral(const Spectrum& s, double h, double t, long k_freq = 0);

// Bound sqrt(2/pi) dist_1(f, B_{pi/h}).
RemainderReport wks_report(const Spectrum& s, double h, double t, long K = 0);
std::vector<RemainderReport> wks_report(const Spectrum& s, double h, const std::vector<double>& ts, long K = 0);

// max over t of |R(t)| / bound for sinc(2t/h - 1), with R from the band form.
double wks_extremal_ratio(double h, const std::vector<double>& t_grid);

// (1/sqrt(2 pi)) int_{|v| <= pi/h} f(v) e^{ivt} dv, the reproducing kernel convolution.
cplx rkf_approx(const Spectrum& s, double h, double t);

// Bound (1/sqrt(2 pi)) dist_1(f, B_{pi/h}).
RemainderReport rkf_report(const Spectrum& s, double h, double t);

// max over t of |R(t)| / bound for sinc(2t/h).
double rkf_extremal_ratio(double h, const std::vector<double>& t_grid);

// The sampling extremals as spectra.
Spectrum wks_extremal(double h);
Spectrum rkf_extremal(double h);

struct ParsevalReport {
  cplx integral;    // int f conj(g)
  cplx sample_sum;  // h sum_{|k| <= K} f(hk) conj(g(hk))
  cplx remainder;   // integral - sample_sum
  double truncation_budget = 0.0;
  // Independent evaluation: minus the sum of overlaps of f-hat with conj(g-hat) shifted by 2 pi m / h.
  cplx aliasing;
  long K = 0;

  bool consistent(double tol) const;
};

ParsevalReport parseval(const Spectrum& sf, const Spectrum& sg, double h, long K = 0);

// Remainder by aliasing alone, without samples.
cplx parseval_aliasing(const Spectrum& sf, const Spectrum& sg, double h);

struct BernsteinReport {
  int order = 1;
  double sigma = 0.0;
  double lhs = 0.0;        // ||f^(s)||_2
  double classical = 0.0;  // sigma^s ||f||_2
  double dist_term = 0.0;  // dist_2(f^(s), B_sigma)
  double low_part = 0.0;   // ||f_0^(s)||_2 for the part of the spectrum inside [-sigma, sigma]
  double margin = 0.0;     // classical + dist_term - lhs

  bool holds(double tol = 1e-12) const;
  // lhs^2 - low_part^2 - dist_term^2, zero up to rounding.
  double split_defect() const;
};

BernsteinReport bernstein_check(const Spectrum& s, int order, double sigma);

struct NikolskiiSum {
  double value = 0.0;   // (h sum_{|k| <= K} |f(hk)|^2)^{1/2}
  double budget = 0.0;  // upper bound on the increase from |k| > K
  long K = 0;
};

NikolskiiSum nikolskii_sum(const Spectrum& s, double h, long K = 0);

struct NikolskiiReport {
  NikolskiiSum sum;
  double l2 = 0.0;
  double dist_term = 0.0;  // dist_2(f', B_sigma)
  double bound = 0.0;      // (1 + h sigma) ||f||_2 + h dist_term
  double margin = 0.0;

  bool holds() const;
};

NikolskiiReport nikolskii_check(const Spectrum& s, double h, double sigma, long K = 0);

}  // namespace bandlim
