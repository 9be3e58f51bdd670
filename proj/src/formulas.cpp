#include "bandlim/formulas.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bandlim/distances.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/parallel.hpp"
#include "bandlim/riesz.hpp"

namespace bandlim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr long kMinSamples = 64;
constexpr long kMaxSamples = 1L << 20;
constexpr double kSampleRelTol = 1e-8;
constexpr double kRoundoff = 1e-9;

// |f(hk)| <= first / k + second / k^2 once k >= min_k.
struct SampleDecay {
  double first = 0.0;
  double second = 0.0;
  long min_k = 0;
  double sup = 0.0;
};

SampleDecay sample_decay(const Spectrum& s, double h, double t_abs) {
  if (!s.tail_free()) throw UnsupportedTimeEval("samples need a tail-free spectrum");
  const EnvelopeDecay e = envelope_decay(s);
  // With h k - T >= h k / 2 the envelope a1 / (R - T) + a2 / (R - T)^2 is at most 2 a1 / (hk) + 4 a2 / (hk)^2.
  return {2.0 * e.a1 / h, 4.0 * e.a2 / (h * h), static_cast<long>(std::ceil(2.0 * (e.shift + t_abs) / h)) + 1, e.sup};
}

// sum_{k > K} (a / k + b / k^2)(c / k + d / k^2) via sum_{k > K} k^-p <= K^{1-p} / (p - 1).
double product_tail(double a, double b, double c, double d, long K) {
  const double x = static_cast<double>(K);
  return a * c / x + (a * d + b * c) / (2.0 * x * x) + b * d / (3.0 * x * x * x);
}

// Both sides of the WKS series beyond K; |sinc(t/h - k)| <= 2 / (pi k) once k >= 2|t|/h.
double wks_tail(const SampleDecay& d, long K) { return 2.0 * product_tail(d.first, d.second, 2.0 / kPi, 0.0, K); }

double sinc_shifted(double x, long k, double sin_pi_x) {
  const double d = x - static_cast<double>(k);
  if (std::abs(d) < 1e-6) return sinc(d);
  return ((k % 2 == 0) ? sin_pi_x : -sin_pi_x) / (kPi * d);
}

cplx sample_series(const std::vector<cplx>& f, long K, double x) {
  const double sp = std::sin(kPi * x);
  cplx sum = 0.0;
  // Outermost terms first.
  for (long j = K; j >= 1; --j) sum += f[K + j] * sinc_shifted(x, j, sp) + f[K - j] * sinc_shifted(x, -j, sp);
  return sum + f[K] * sinc_shifted(x, 0, sp);
}

bool within(double value, double limit) { return value <= limit * (1.0 + kRoundoff) + 1e-14; }

}  // namespace

bool RemainderReport::holds() const { return within(std::abs(remainder), bound + truncation_budget); }

double RemainderReport::ratio() const { return bound > 0.0 ? std::abs(remainder) / bound : 0.0; }

long default_sample_count(const Spectrum& s, double h, double t_max) {
  if (!(h > 0.0)) throw InvalidSpectrum("step h must be positive");
  const SampleDecay d = sample_decay(s, h, std::abs(t_max));
  long K = kMinSamples;
  while (K < d.min_k) K *= 2;
  while (K < kMaxSamples && wks_tail(d, K) >= kSampleRelTol * d.sup) K *= 2;
  return std::max(K, d.min_k);
}

std::vector<cplx> samples(const Spectrum& s, double h, long K) {
  if (!s.tail_free()) throw UnsupportedTimeEval("samples need a tail-free spectrum");
  std::vector<cplx> out(2 * K + 1);
  const std::size_t chunks = 64;
  parallel_for(chunks, [&](std::size_t c) {
    for (std::size_t i = c; i < out.size(); i += chunks) out[i] = time_eval(s, h * (static_cast<long>(i) - K));
  });
  return out;
}

std::vector<SeriesValue> wks_series(const Spectrum& s, double h, const std::vector<double>& ts, long K) {
  double t_max = 0.0;
  for (double t : ts) t_max = std::max(t_max, std::abs(t));
  if (K == 0) K = default_sample_count(s, h, t_max);
  const SampleDecay d = sample_decay(s, h, t_max);
  if (K < d.min_k) throw NonConvergence("sample count too small for a tail budget");
  const auto f = samples(s, h, K);
  std::vector<SeriesValue> out(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) { out[i] = {sample_series(f, K, ts[i] / h), wks_tail(d, K), K}; });
  return out;
}

SeriesValue wks_series(const Spectrum& s, double h, double t, long K) { return wks_series(s, h, std::vector{t}, K)[0]; }

cplx wks_remainder_spectral(const Spectrum& s, double h, double t, long k_freq) {
  if (!(h > 0.0)) throw InvalidSpectrum("step h must be positive");
  if (k_freq == 0) {
    if (!s.tail_free()) throw InvalidSpectrum("power tails need an explicit band count");
    k_freq = static_cast<long>(std::ceil((s.support_radius() * h / kPi + 1.0) / 2.0));
  }
  cplx sum = 0.0;
  for (long k = -k_freq; k <= k_freq; ++k) {
    if (k == 0) continue;
    const cplx factor = 1.0 - std::polar(1.0, -2.0 * kPi * k * t / h);
    if (std::abs(factor) == 0.0) continue;
    sum += factor * oscillatory_inversion(s.pieces(), t, band((2 * k - 1) * kPi / h, (2 * k + 1) * kPi / h));
  }
  return sum;
}

std::vector<RemainderReport> wks_report(const Spectrum& s, double h, const std::vector<double>& ts, long K) {
  const auto series = wks_series(s, h, ts, K);
  const double bound = std::sqrt(2.0 / kPi) * dist(s, 1.0, kPi / h);
  std::vector<RemainderReport> out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const cplx exact = time_eval(s, ts[i]);
    out.push_back({series[i].value, exact, exact - series[i].value, bound, series[i].budget});
  }
  return out;
}

RemainderReport wks_report(const Spectrum& s, double h, double t, long K) { return wks_report(s, h, std::vector{t}, K)[0]; }

Spectrum wks_extremal(double h) { return Spectrum({RectAtom{h / 2.0, 2.0 * kPi / h, 0.0, h / 2.0}}); }

Spectrum rkf_extremal(double h) { return Spectrum({RectAtom{h / 2.0, 2.0 * kPi / h, 0.0, 0.0}}); }

double wks_extremal_ratio(double h, const std::vector<double>& t_grid) {
  // The band form of the remainder is exact, so the grid search needs no samples.
  const Spectrum s = wks_extremal(h);
  const double bound = std::sqrt(2.0 / kPi) * dist(s, 1.0, kPi / h);
  std::vector<double> ratios(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) { ratios[i] = std::abs(wks_remainder_spectral(s, h, t_grid[i])) / bound; });
  return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
}

cplx rkf_approx(const Spectrum& s, double h, double t) {
  if (!(h > 0.0)) throw InvalidSpectrum("step h must be positive");
  return oscillatory_inversion(s.pieces(), t, inside(kPi / h));
}

RemainderReport rkf_report(const Spectrum& s, double h, double t) {
  const cplx approx = rkf_approx(s, h, t);
  const cplx exact = time_eval(s, t);
  return {approx, exact, exact - approx, dist(s, 1.0, kPi / h) / std::sqrt(2.0 * kPi), 0.0};
}

double rkf_extremal_ratio(double h, const std::vector<double>& t_grid) {
  const Spectrum s = rkf_extremal(h);
  std::vector<double> ratios(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) { ratios[i] = rkf_report(s, h, t_grid[i]).ratio(); });
  return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
}

bool ParsevalReport::consistent(double tol) const {
  return std::abs(remainder - aliasing) <= truncation_budget + tol;
}

cplx parseval_aliasing(const Spectrum& sf, const Spectrum& sg, double h) {
  if (!sf.tail_free() || !sg.tail_free()) throw UnsupportedTimeEval("aliasing needs tail-free spectra");
  if (!(h > 0.0)) throw InvalidSpectrum("step h must be positive");
  const double period = 2.0 * kPi / h;
  // Only shifts that make some pair of pieces overlap contribute.
  std::set<long> shifts;
  for (const auto& p : sf.pieces())
    for (const auto& q : sg.pieces()) {
      const long lo = static_cast<long>(std::floor((p.a - q.b) / period));
      const long hi = static_cast<long>(std::ceil((p.b - q.a) / period));
      if (hi - lo > kMaxSamples) throw NonConvergence("too many aliasing shifts");
      for (long m = lo; m <= hi; ++m)
        if (m != 0) shifts.insert(m);
    }
  std::vector<long> ms(shifts.begin(), shifts.end());
  std::vector<cplx> terms(ms.size());
  parallel_for(ms.size(), [&](std::size_t i) {
    terms[i] = integrate_product(sf.pieces(), translate_pieces(sg.pieces(), ms[i] * period));
  });
  cplx sum = 0.0;
  for (const auto& t : terms) sum -= t;
  return sum;
}

ParsevalReport parseval(const Spectrum& sf, const Spectrum& sg, double h, long K) {
  ParsevalReport r;
  if (K == 0) K = std::max(default_sample_count(sf, h), default_sample_count(sg, h));
  const SampleDecay df = sample_decay(sf, h, 0.0), dg = sample_decay(sg, h, 0.0);
  if (K < std::max(df.min_k, dg.min_k)) throw NonConvergence("sample count too small for a tail budget");
  const auto f = samples(sf, h, K);
  const auto g = samples(sg, h, K);
  cplx sum = 0.0;
  for (long j = K; j >= 1; --j) sum += f[K + j] * std::conj(g[K + j]) + f[K - j] * std::conj(g[K - j]);
  sum += f[K] * std::conj(g[K]);
  r.K = K;
  r.sample_sum = h * sum;
  r.integral = inner_product(sf, sg);
  r.remainder = r.integral - r.sample_sum;
  r.truncation_budget = 2.0 * h * product_tail(df.first, df.second, dg.first, dg.second, K);
  r.aliasing = parseval_aliasing(sf, sg, h);
  return r;
}

bool BernsteinReport::holds(double tol) const { return margin >= -tol * std::max(1.0, lhs); }

double BernsteinReport::split_defect() const { return lhs * lhs - low_part * low_part - dist_term * dist_term; }

BernsteinReport bernstein_check(const Spectrum& s, int order, double sigma) {
  if (order < 1) throw InvalidSpectrum("derivative order must be positive");
  if (!(sigma > 0.0)) throw InvalidSpectrum("sigma must be positive");
  require_weighted_l2(s, order);
  BernsteinReport r;
  r.order = order;
  r.sigma = sigma;
  r.lhs = std::sqrt(integrate_abs_q(s.pieces(), 2.0, 2.0 * order, whole_line()));
  r.low_part = std::sqrt(integrate_abs_q(s.pieces(), 2.0, 2.0 * order, inside(sigma)));
  r.dist_term = dist_derivative(s, 2.0, sigma, order);
  r.classical = std::pow(sigma, order) * l2_norm(s);
  r.margin = r.classical + r.dist_term - r.lhs;
  return r;
}

NikolskiiSum nikolskii_sum(const Spectrum& s, double h, long K) {
  if (K == 0) K = default_sample_count(s, h);
  const SampleDecay d = sample_decay(s, h, 0.0);
  if (K < d.min_k) throw NonConvergence("sample count too small for a tail budget");
  const auto f = samples(s, h, K);
  double sum = 0.0;
  for (long j = K; j >= 1; --j) sum += std::norm(f[K + j]) + std::norm(f[K - j]);
  sum += std::norm(f[K]);
  const double tail = 2.0 * product_tail(d.first, d.second, d.first, d.second, K);
  NikolskiiSum out;
  out.K = K;
  out.value = std::sqrt(h * sum);
  out.budget = std::sqrt(h * (sum + tail)) - out.value;
  return out;
}

bool NikolskiiReport::holds() const { return within(sum.value, bound); }

NikolskiiReport nikolskii_check(const Spectrum& s, double h, double sigma, long K) {
  if (!(sigma > 0.0)) throw InvalidSpectrum("sigma must be positive");
  require_weighted_l2(s, 1.0);
  NikolskiiReport r;
  r.sum = nikolskii_sum(s, h, K);
  r.l2 = l2_norm(s);
  r.dist_term = dist_derivative(s, 2.0, sigma, 1);
  r.bound = (1.0 + h * sigma) * r.l2 + h * r.dist_term;
  r.margin = r.bound - r.sum.value;
  return r;
}

}  // namespace bandlim
