#include "bandlim/rates.hpp"

#include <algorithm>
#include <cmath>

#include "bandlim/errors.hpp"
#include "bandlim/parallel.hpp"

namespace bandlim {

RateFit loglog_fit(const std::vector<Point>& points) {
  if (points.size() < 4) throw DegenerateFit("need at least 4 points");
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  double lo = points[0].first, hi = points[0].first;
  std::vector<double> xs, ys;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
      throw DegenerateFit("log-log fit needs positive finite values");
    xs.push_back(std::log(x));
    ys.push_back(std::log(y));
    sx += xs.back();
    sy += ys.back();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0.0) throw DegenerateFit("zero variance in x");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - fit.intercept - fit.slope * xs[i];
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  fit.window_min = lo;
  fit.window_max = hi;
  fit.n_points = static_cast<int>(points.size());
  return fit;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) throw DegenerateFit("log grid needs 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<Point> sweep(const std::function<double(double)>& quantity, double lo, double hi, int n) {
  const auto xs = log_grid(lo, hi, n);
  std::vector<Point> pts(xs.size());
  parallel_for(xs.size(), [&](size_t i) { pts[i] = {xs[i], quantity(xs[i])}; });
  return pts;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::LittleO: return "LITTLE_O";
    case Verdict::BigOTight: return "BIG_O_TIGHT";
    default: return "INCONCLUSIVE";
  }
}

TrendReport oh_vs_big_oh(const std::vector<Point>& points, double exponent, Limit limit) {
  if (points.size() < 4) throw DegenerateFit("need at least 4 points");
  std::vector<Point> pts = points;
  std::sort(pts.begin(), pts.end());
  if (limit == Limit::ToZero) std::reverse(pts.begin(), pts.end());
  TrendReport rep;
  for (const auto& [x, y] : pts) rep.scaled.push_back(std::abs(y) * std::pow(x, exponent));
  const size_t q = (pts.size() + 3) / 4;
  double first = 0.0, last = 0.0;
  for (size_t i = 0; i < q; ++i) {
    first += rep.scaled[i];
    last += rep.scaled[pts.size() - 1 - i];
  }
  if (!(first > 0.0)) return rep;
  rep.trend = last / first;
  if (rep.trend < kLittleOThreshold) {
    rep.verdict = Verdict::LittleO;
  } else if (rep.trend > kTightThreshold) {
    rep.verdict = Verdict::BigOTight;
  }
  return rep;
}

TrendReport oh_vs_big_oh(const std::function<double(double)>& quantity, double lo, double hi, int n, double exponent,
                         Limit limit) {
  return oh_vs_big_oh(sweep(quantity, lo, hi, n), exponent, limit);
}

}  // namespace bandlim
