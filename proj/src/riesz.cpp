#include "bandlim/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "bandlim/errors.hpp"
#include "bandlim/parallel.hpp"

namespace bandlim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTableStart = 1.0;
constexpr double kTableEnd = 32.0;
constexpr double kTableStep = 0.5;
constexpr int kSeriesTerms = 40;

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double gl16(const std::function<double(double)>& f, double a, double b) {
  const auto& x = gauss_nodes(16);
  const auto& w = gauss_weights(16);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += w[i] * f(mid + half * x[i]);
  return s * half;
}

// Largest frequency present in the time side of the atoms.
double max_frequency(const Spectrum& s) {
  double om = 0.0;
  for (const auto& a : s.atoms()) {
    if (const auto* t = std::get_if<TriangleAtom>(&a)) om = std::max(om, std::abs(t->c) + t->half_width());
    if (const auto* r = std::get_if<RectAtom>(&a)) om = std::max(om, std::abs(r->c) + r->w);
  }
  return om;
}

// s^r - 1 for s = sin(x)/x, stable near x = 0.
double sinc_power_minus_one(double x, int r) {
  if (std::abs(x) < 0.5) {
    const double x2 = x * x;
    const double sm1 = -x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))));
    return std::expm1(r * std::log1p(sm1));
  }
  return std::pow(std::sin(x) / x, r) - 1.0;
}

}  // namespace

void RieszConfig::validate() const {
  if (j < 1) throw SingularParameter("j must be at least 1");
  if (!(alpha > 0.0) || !(alpha < 2.0 * j)) throw SingularParameter("need 0 < alpha < 2j");
  if (!(epsilon > 0.0)) throw SingularParameter("epsilon must be positive");
}

double lambda_c(double a) {
  const double n = std::round(a);
  if (std::abs(a - n) < 1e-14) {
    const long k = static_cast<long>(n);
    if (k <= 0 && k % 2 == 0) throw SingularParameter("Lambda_c is singular at non-positive even integers");
    if (k > 0 && k % 2 == 1) return 0.0;
    if (k < 0) {
      const long m = -k;
      // pi (-1)^m sin(m pi / 2) / m!
      const double sgn = (m % 2 ? -1.0 : 1.0) * ((m % 4 == 1) ? 1.0 : -1.0);
      return kPi * sgn / std::tgamma(m + 1.0);
    }
  }
  return 2.0 * std::tgamma(a) * std::cos(kPi * a / 2.0);
}

RieszKernel::RieszKernel(double alpha, int j) : alpha_(alpha), j_(j) {
  RieszConfig{alpha, j, 1.0}.validate();
  std::vector<double> base(kSeriesTerms);
  double fact = 1.0;
  for (int k = 0; k < kSeriesTerms; ++k) {
    if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
    base[k] = (k % 2 ? -1.0 : 1.0) / fact;
  }
  series_.assign(kSeriesTerms, 0.0);
  series_[0] = 1.0;
  for (int p = 0; p < 2 * j; ++p) {
    std::vector<double> next(kSeriesTerms, 0.0);
    for (int a = 0; a < kSeriesTerms; ++a)
      for (int b = 0; a + b < kSeriesTerms; ++b) next[a + b] += series_[a] * base[b];
    series_ = next;
  }
  auto integrand = [this](double s) { return std::pow(s, -1.0 - alpha_) * std::pow(std::sin(s), 2 * j_); };
  const int n = static_cast<int>(std::round((kTableEnd - kTableStart) / kTableStep));
  nodes_.resize(n + 1);
  node_upper_.resize(n + 1);
  for (int i = 0; i <= n; ++i) nodes_[i] = kTableStart + i * kTableStep;
  node_upper_[n] = asymptotic_upper(kTableEnd);
  for (int i = n - 1; i >= 0; --i) node_upper_[i] = node_upper_[i + 1] + gl16(integrand, nodes_[i], nodes_[i + 1]);
  total_ = series_lower(kTableStart) + node_upper_[0];
}

double RieszKernel::series_lower(double x) const {
  if (x <= 0.0) return 0.0;
  const double x2 = x * x;
  double s = 0.0, p = 1.0;
  for (int m = 0; m < kSeriesTerms; ++m) {
    const double term = series_[m] * p / (2.0 * j_ - alpha_ + 2.0 * m);
    s += term;
    if (m > 4 && std::abs(term) < 1e-18 * std::abs(s)) break;
    p *= x2;
  }
  return std::pow(x, 2.0 * j_ - alpha_) * s;
}

double RieszKernel::asymptotic_upper(double x) const {
  double s = binom(2 * j_, j_) * std::pow(x, -alpha_) / alpha_;
  for (int k = 1; k <= j_; ++k)
    s += 2.0 * (k % 2 ? -1.0 : 1.0) * binom(2 * j_, j_ - k) * std::real(power_exp_tail(1.0 + alpha_, 2.0 * k, x));
  return s / std::pow(4.0, j_);
}

double RieszKernel::upper(double x) const {
  if (x <= 0.0) return total_;
  if (x < kTableStart) return total_ - series_lower(x);
  if (x >= kTableEnd) return asymptotic_upper(x);
  const size_t i = std::min(nodes_.size() - 2, static_cast<size_t>((x - kTableStart) / kTableStep));
  auto integrand = [this](double s) { return std::pow(s, -1.0 - alpha_) * std::pow(std::sin(s), 2 * j_); };
  return node_upper_[i + 1] + gl16(integrand, x, nodes_[i + 1]);
}

double RieszKernel::lower(double x) const {
  if (x <= 0.0) return 0.0;
  if (x <= kTableStart) return series_lower(x);
  return total_ - upper(x);
}

double RieszKernel::constant() const { return (j_ % 2 ? -1.0 : 1.0) * std::pow(2.0, 2.0 * j_ - alpha_) * total_; }

double RieszKernel::eta(double v, double eps) const {
  const double av = std::abs(v);
  if (av == 0.0) return 0.0;
  return std::pow(av, alpha_) * upper(0.5 * eps * av) / total_;
}

double RieszKernel::eta_deficit(double v, double eps) const {
  const double av = std::abs(v);
  if (av == 0.0) return 0.0;
  return std::pow(av, alpha_) * lower(0.5 * eps * av) / total_;
}

double RieszKernel::eta_sup_bound(double eps) const {
  return std::pow(4.0, j_) / (alpha_ * std::pow(eps, alpha_) * std::abs(constant()));
}

double c_alpha(double alpha, int j) { return RieszKernel(alpha, j).constant(); }

double eta(double v, double alpha, int j, double eps) {
  RieszConfig{alpha, j, eps}.validate();
  return RieszKernel(alpha, j).eta(v, eps);
}

cplx weighted_density(const WeightedSpectrum& w, double v) {
  return w.multiplier(v) * spectral_density(w.base, v);
}

double weighted_norm(const WeightedSpectrum& w) {
  if (w.base.empty()) return 0.0;
  auto weight = [&](double v) { return std::norm(w.multiplier(v)); };
  return std::sqrt(integrate_sq_weighted(w.base.pieces(), weight, whole_line(), 2.0 * w.growth));
}

cplx weighted_time_eval(const WeightedSpectrum& w, double t) {
  if (!w.base.tail_free()) throw UnsupportedTimeEval("time evaluation of a spectrum with power tails");
  if (w.base.empty()) return 0.0;
  return oscillatory_inversion(w.base.pieces(), t, whole_line(), w.multiplier);
}

bool in_weighted_l2(const Spectrum& s, double order) {
  for (const auto& t : s.tails())
    if (!(2.0 * order < 2.0 * t.gamma - 1.0)) return false;
  return true;
}

void require_weighted_l2(const Spectrum& s, double order) {
  if (!in_weighted_l2(s, order)) throw NotInSpace("|v|^order f is not square integrable (tail exponent too small)");
}

WeightedSpectrum riesz_spectral(const Spectrum& s, double alpha) {
  if (!(alpha > 0.0)) throw SingularParameter("alpha must be positive");
  require_weighted_l2(s, alpha);
  return {s, [alpha](double v) { return cplx(std::pow(std::abs(v), alpha), 0.0); }, "riesz", alpha};
}

WeightedSpectrum derivative_spectrum(const Spectrum& s, int order) {
  if (order < 0) throw SingularParameter("derivative order must be nonnegative");
  require_weighted_l2(s, order);
  return {s, [order](double v) { return std::pow(cplx(0.0, v), order); }, "derivative", static_cast<double>(order)};
}

WeightedSpectrum hilbert_spectrum(const Spectrum& s) {
  return {s, [](double v) { return v > 0.0 ? cplx(0.0, -1.0) : (v < 0.0 ? cplx(0.0, 1.0) : cplx(0.0)); }, "hilbert",
          0.0};
}

WeightedSpectrum central_difference_spectrum(const Spectrum& s, int r, double h) {
  return {s, [r, h](double v) { return std::pow(cplx(0.0, 2.0 * std::sin(0.5 * h * v)), r); }, "central_difference",
          0.0};
}

WeightedSpectrum eta_spectrum(const Spectrum& s, const RieszConfig& cfg) {
  cfg.validate();
  require_weighted_l2(s, 0.0);
  auto kernel = std::make_shared<RieszKernel>(cfg.alpha, cfg.j);
  const double eps = cfg.epsilon;
  return {s, [kernel, eps](double v) { return cplx(kernel->eta(v, eps), 0.0); }, "eta", 0.0};
}

double default_u_max(double epsilon) { return std::max(1e3 * epsilon, 1e3); }

SingularResult riesz_singular(const Spectrum& s, const RieszConfig& cfg, const std::vector<double>& t_grid,
                              double u_max) {
  cfg.validate();
  if (!s.tail_free()) throw UnsupportedTimeEval("singular integral needs time values; spectrum has power tails");
  const double U = u_max > 0.0 ? u_max : default_u_max(cfg.epsilon);
  if (!(U > cfg.epsilon)) throw SingularParameter("u_max must exceed epsilon");
  const RieszKernel kernel(cfg.alpha, cfg.j);
  const double C = kernel.constant();
  const int j = cfg.j;
  const double a = cfg.alpha;
  std::vector<double> coef(2 * j + 1);
  for (int k = 0; k <= 2 * j; ++k) coef[k] = (k % 2 ? -1.0 : 1.0) * binom(2 * j, k);
  const double om = max_frequency(s);
  const double step = om > 0.0 ? std::min(1.0, kPi / (j * om)) : 1.0;
  std::vector<double> pts{cfg.epsilon};
  while (pts.back() < U) pts.push_back(std::min({2.0 * pts.back(), pts.back() + step, U}));

  SingularResult res;
  res.t = t_grid;
  res.u_max = U;
  res.values.resize(t_grid.size());
  res.budgets.resize(t_grid.size());
  const double neighbours = std::pow(4.0, j) - binom(2 * j, j);
  const double sup = envelope_decay(s).sup;
  parallel_for(t_grid.size(), [&](size_t i) {
    const double t = t_grid[i];
    auto f = [&](double u) {
      cplx acc = 0.0;
      for (int k = 0; k <= 2 * j; ++k) acc += coef[k] * time_eval(s, t + (j - k) * u);
      return acc * std::pow(u, -1.0 - a);
    };
    cplx sum = 0.0;
    for (size_t m = 0; m + 1 < pts.size(); ++m) {
      // the 2j-th difference cancels to O(u^{2j}) near eps, so rounding in it sets an absolute floor
      const double noise = 1e-14 * std::pow(4.0, j) * sup * (std::pow(pts[m], -a) - std::pow(pts[m + 1], -a)) / a;
      sum += adaptive_rel_complex(f, pts[m], pts[m + 1], 1e-10, std::max(noise, 1e-15));
    }
    sum += coef[j] * time_eval(s, t) * std::pow(U, -a) / a;
    res.values[i] = sum / C;
    const double reach = U - std::abs(t);
    const double env = reach > 0.0 ? time_envelope(s, reach) : kInf;
    res.budgets[i] = neighbours * env * std::pow(U, -a) / (a * std::abs(C));
  });
  return res;
}

cplx riesz_multiplier_side(const Spectrum& s, const RieszConfig& cfg, double t) {
  return weighted_time_eval(eta_spectrum(s, cfg), t);
}

std::vector<double> riesz_convergence(const Spectrum& s, double alpha, int j, const std::vector<double>& eps_list) {
  RieszConfig{alpha, j, 1.0}.validate();
  require_weighted_l2(s, alpha);
  const RieszKernel kernel(alpha, j);
  std::vector<double> out(eps_list.size(), 0.0);
  if (s.empty()) return out;
  parallel_for(eps_list.size(), [&](size_t i) {
    const double eps = eps_list[i];
    if (!(eps > 0.0)) throw SingularParameter("epsilon must be positive");
    auto w = [&](double v) {
      const double d = kernel.eta_deficit(v, eps);
      return d * d;
    };
    out[i] = std::sqrt(integrate_sq_weighted(s.pieces(), w, whole_line(), 2.0 * alpha));
  });
  return out;
}

std::vector<double> riemann_check(const Spectrum& s, int r, const std::vector<double>& h_list) {
  if (r < 1) throw SingularParameter("order must be positive");
  require_weighted_l2(s, r);
  std::vector<double> out(h_list.size(), 0.0);
  if (s.empty()) return out;
  parallel_for(h_list.size(), [&](size_t i) {
    const double h = h_list[i];
    auto w = [&](double v) {
      const double d = std::pow(std::abs(v), r) * sinc_power_minus_one(0.5 * h * v, r);
      return d * d;
    };
    out[i] = std::sqrt(integrate_sq_weighted(s.pieces(), w, whole_line(), 2.0 * r));
  });
  return out;
}

}  // namespace bandlim
