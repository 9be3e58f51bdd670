#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace bandlim {

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double window_min = 0.0;
  double window_max = 0.0;
  int n_points = 0;
};

using Point = std::pair<double, double>;

// Least squares on (ln x, ln y).
RateFit loglog_fit(const std::vector<Point>& points);

// Log-spaced samples of quantity over [lo, hi], evaluated in parallel.
std::vector<Point> sweep(const std::function<double(double)>& quantity, double lo, double hi, int n);
std::vector<double> log_grid(double lo, double hi, int n);

enum class Verdict { LittleO, BigOTight, Inconclusive };
enum class Limit { ToInfinity, ToZero };

std::string to_string(Verdict v);

struct TrendReport {
  Verdict verdict = Verdict::Inconclusive;
  // mean of the last quartile over mean of the first quartile, ordered toward the limit
  double trend = 0.0;
  std::vector<double> scaled;
};

inline constexpr double kLittleOThreshold = 0.5;
inline constexpr double kTightThreshold = 0.9;

// Classifies y * x^exponent along the approach to the limit.
TrendReport oh_vs_big_oh(const std::vector<Point>& points, double exponent, Limit limit);
TrendReport oh_vs_big_oh(const std::function<double(double)>& quantity, double lo, double hi, int n, double exponent,
                         Limit limit);

}  // namespace bandlim
