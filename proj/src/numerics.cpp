#include "bandlim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule make_rule(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& rule(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

const GaussRule& rule32() {
  static const GaussRule& r = rule(32);
  return r;
}

template <class T, class F>
T gl32(const F& fn, double a, double b) {
  const GaussRule& r = rule32();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  T sum{};
  for (size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * fn(mid + half * r.nodes[i]);
  return sum * half;
}

template <class T, class F>
T adapt(const F& fn, double a, double b, T whole, double abs_tol, int depth) {
  const double m = 0.5 * (a + b);
  T left = gl32<T>(fn, a, m);
  T right = gl32<T>(fn, m, b);
  T sum = left + right;
  if (std::abs(sum - whole) <= abs_tol || std::abs(b - a) <= 1e-14 * (std::abs(a) + std::abs(b))) return sum;
  if (depth <= 0) throw NonConvergence("adaptive quadrature: depth limit reached");
  return adapt<T>(fn, a, m, left, 0.5 * abs_tol, depth - 1) + adapt<T>(fn, m, b, right, 0.5 * abs_tol, depth - 1);
}

template <class T, class F>
T adaptive_rel_impl(const F& fn, double a, double b, double rel_tol, double abs_floor, int max_depth) {
  if (!(b > a)) return T{};
  const GaussRule& r = rule32();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  T whole{};
  double mass = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i) {
    const T val = fn(mid + half * r.nodes[i]);
    whole += r.weights[i] * val;
    mass += r.weights[i] * std::abs(val);
  }
  whole *= half;
  mass *= half;
  double tol = std::max(rel_tol * std::max(std::abs(whole), 1e-3 * mass), abs_floor);
  if (tol == 0.0) tol = 1e-300;
  return adapt<T>(fn, a, b, whole, tol, max_depth);
}

double lerp_real(double r0, double r1, double x) { return r0 + (r1 - r0) * x; }

cplx lerp(cplx ya, cplx yb, double x) { return ya + (yb - ya) * x; }

// int over [0,len] of |linear from r0 to r1|^q, sign fixed or not.
double linear_abs_q(double r0, double r1, double len, double q) {
  if (q == 2.0) return len * (r0 * r0 + r0 * r1 + r1 * r1) / 3.0;
  const double a0 = std::abs(r0), a1 = std::abs(r1);
  if (r0 * r1 < 0.0) return len * (std::pow(a0, q + 1.0) + std::pow(a1, q + 1.0)) / ((q + 1.0) * (a0 + a1));
  if (q == 1.0) return len * (a0 + a1) / 2.0;
  const double hi = std::max(a0, a1), lo = std::min(a0, a1);
  if (hi == 0.0) return 0.0;
  if (hi - lo > 1e-3 * hi) return len * (std::pow(hi, q + 1.0) - std::pow(lo, q + 1.0)) / ((q + 1.0) * (hi - lo));
  auto f = [&](double x) { return std::pow(lerp_real(a0, a1, x), q); };
  return len * gl32<double>(f, 0.0, 1.0);
}

double tail_gamma_min(const std::vector<TailTerm>& tails) {
  double g = kInf;
  for (const auto& t : tails) g = std::min(g, t.gamma);
  return g;
}

double tail_sum(const std::vector<TailTerm>& tails, double v) {
  double s = 0.0;
  const double av = std::abs(v);
  for (const auto& t : tails) s += t.amp * std::pow(av, -t.gamma);
  return s;
}

// int_B^inf |sum amp v^-gamma|^q v^w dv, B > 0.
double tail_abs_q(const std::vector<TailTerm>& tails, double q, double w, double B) {
  if (tails.empty()) return 0.0;
  const double gmin = tail_gamma_min(tails);
  if (q * gmin - w <= 1.0) throw DivergentIntegral("weighted tail integral diverges (q*gamma - w <= 1)");
  if (tails.size() == 1) {
    const auto& t = tails[0];
    const double e = q * t.gamma - w - 1.0;
    return std::pow(std::abs(t.amp), q) * std::pow(B, -e) / e;
  }
  if (q == 2.0) {
    double s = 0.0;
    for (const auto& a : tails)
      for (const auto& b : tails) {
        const double e = a.gamma + b.gamma - w - 1.0;
        s += a.amp * b.amp * std::pow(B, -e) / e;
      }
    return s;
  }
  bool same_sign = true;
  for (const auto& t : tails) same_sign = same_sign && (t.amp * tails[0].amp >= 0.0);
  if (q == 1.0 && same_sign) {
    double s = 0.0;
    for (const auto& t : tails) {
      const double e = t.gamma - w - 1.0;
      s += std::abs(t.amp) * std::pow(B, -e) / e;
    }
    return s;
  }
  auto f = [&](double v) { return std::pow(std::abs(tail_sum(tails, v)), q) * std::pow(v, w); };
  return semi_infinite_quadrature(f, B, q * gmin - w);
}

double max_tau_spread(const Piece& p) {
  double lo = kInf, hi = -kInf;
  for (const auto& t : p.terms) {
    lo = std::min(lo, t.tau);
    hi = std::max(hi, t.tau);
  }
  if (!p.tails.empty() && !p.terms.empty()) {
    lo = std::min(lo, 0.0);
    hi = std::max(hi, 0.0);
  }
  return p.terms.empty() ? 0.0 : hi - lo;
}

// Split [a,b] into chunks no longer than step, plus a break at 0 when requested.
std::vector<double> chunk_points(double a, double b, double step, bool split_zero) {
  std::vector<double> pts{a};
  if (split_zero && a < 0.0 && b > 0.0) pts.push_back(0.0);
  pts.push_back(b);
  if (!(step > 0.0) || !std::isfinite(step)) return pts;
  std::vector<double> out{pts[0]};
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double lo = pts[i], hi = pts[i + 1];
    const double n = std::ceil((hi - lo) / step);
    const long cnt = static_cast<long>(std::min(n, 1e7));
    for (long k = 1; k < cnt; ++k) out.push_back(lo + (hi - lo) * k / cnt);
    out.push_back(hi);
  }
  return out;
}

// Integrand behaving like |v|^w near 0 with a possibly non-smooth factor there (fractional w or an
// arbitrary weight): intervals touching 0 are graded geometrically toward 0 so every sub-interval is
// smooth; the innermost sliver is dropped once it is below tolerance.
template <class F>
double graded_at_origin(const F& f, double lo, double hi, double w, const QuadConfig& cfg, bool always = false) {
  const bool at_zero = (lo == 0.0 || hi == 0.0) && (always || w != std::floor(w));
  if (!at_zero) return adaptive_rel_impl<double>(f, lo, hi, cfg.rel_tol, 0.0, cfg.max_depth);
  const double sign = hi == 0.0 ? -1.0 : 1.0;
  const double len = hi - lo;
  double total = 0.0, outer = len;
  for (int j = 0; j < 1000; ++j) {
    const double inner = 0.5 * outer;
    const double part = adaptive_rel_impl<double>([&](double x) { return f(sign * x); }, inner, outer, cfg.rel_tol,
                                                  0.0, cfg.max_depth);
    total += part;
    // the sliver [0, inner] holds at most about part * 2^{-(1+w)} / (1 - 2^{-(1+w)})
    const double rest = part * std::pow(2.0, -(1.0 + w)) / (1.0 - std::pow(2.0, -(1.0 + w)));
    if (std::abs(rest) <= cfg.rel_tol * std::abs(total) * 1e-2 || inner == 0.0) break;
    outer = inner;
  }
  return total;
}

double finite_abs_q(const Piece& p, double q, double w, const QuadConfig& cfg) {
  const double len = p.b - p.a;
  if (!(len > 0.0)) return 0.0;
  const bool need_zero_split = (w != 0.0);
  if (p.aligned()) {
    const auto& t = p.terms[0];
    const cplx ref = std::abs(t.ya) >= std::abs(t.yb) ? t.ya : t.yb;
    const double mag = std::abs(ref);
    if (mag == 0.0) return 0.0;
    const cplx u = ref / mag;
    const double r0 = std::real(t.ya * std::conj(u)), r1 = std::real(t.yb * std::conj(u));
    const double skew = std::abs(std::imag(t.ya * std::conj(u))) + std::abs(std::imag(t.yb * std::conj(u)));
    if (skew <= 1e-13 * mag) {
      if (w == 0.0) return linear_abs_q(r0, r1, len, q);
      std::vector<double> cuts{p.a, p.b};
      if (need_zero_split && p.a < 0.0 && p.b > 0.0) cuts.push_back(0.0);
      if (r0 * r1 < 0.0) cuts.push_back(p.a + len * r0 / (r0 - r1));
      std::sort(cuts.begin(), cuts.end());
      const bool poly = (q == 1.0 || q == 2.0) && w == std::floor(w) && q + w <= 60.0;
      double total = 0.0;
      for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (!(hi > lo)) continue;
        auto f = [&](double v) {
          return std::pow(std::abs(lerp_real(r0, r1, (v - p.a) / len)), q) * std::pow(std::abs(v), w);
        };
        total += poly ? gl32<double>(f, lo, hi) : graded_at_origin(f, lo, hi, w, cfg);
      }
      return total;
    }
  }
  const double spread = max_tau_spread(p);
  const double step = spread > 0.0 ? kPi / spread : kInf;
  const auto pts = chunk_points(p.a, p.b, step, need_zero_split);
  auto f = [&](double v) { return std::pow(std::abs(p.eval(v)), q) * std::pow(std::abs(v), w); };
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) total += graded_at_origin(f, pts[i], pts[i + 1], w, cfg);
  return total;
}

// Apply fn to every (piece restricted to region) part; unbounded parts are passed with a = +-B.
template <class F>
void for_each_in_region(const std::vector<Piece>& pieces, const Region& region, F&& fn) {
  for (const auto& p : pieces) {
    for (const auto& iv : region) {
      const double lo = std::max(p.a, iv.lo), hi = std::min(p.b, iv.hi);
      if (!(hi > lo)) continue;
      if (lo == p.a && hi == p.b) {
        fn(p);
      } else {
        fn(restrict_piece(p, lo, hi));
      }
    }
  }
}

// Distance from origin where an unbounded tails-only piece starts.
double tail_start(const Piece& p) { return p.b == kInf ? p.a : -p.b; }

double cos_series(const std::vector<double>& coeff, double omega, double v) {
  double s = 0.0;
  for (size_t k = 0; k < coeff.size(); ++k) s += coeff[k] * std::cos(k * omega * v);
  return s;
}

// int |f|^2 sum coeff[k] cos(k omega v) over a tail-free bounded piece, closed form.
double sq_cos_finite(const Piece& p, const std::vector<double>& coeff, double omega) {
  const double len = p.b - p.a;
  const int K = static_cast<int>(coeff.size()) - 1;
  double total = 0.0;
  for (size_t j = 0; j < p.terms.size(); ++j) {
    for (size_t l = 0; l < p.terms.size(); ++l) {
      const auto& tj = p.terms[j];
      const auto& tl = p.terms[l];
      const cplx dj = tj.yb - tj.ya, dl = tl.yb - tl.ya;
      const cplx q0 = tj.ya * std::conj(tl.ya);
      const cplx q1 = tj.ya * std::conj(dl) + dj * std::conj(tl.ya);
      const cplx q2 = dj * std::conj(dl);
      const double dtau = tj.tau - tl.tau;
      cplx acc = coeff[0] * poly_exp_integral(q0, q1, q2, p.a, len, -dtau);
      for (int k = 1; k <= K; ++k) {
        if (coeff[k] == 0.0) continue;
        acc += 0.5 * coeff[k] *
               (poly_exp_integral(q0, q1, q2, p.a, len, k * omega - dtau) +
                poly_exp_integral(q0, q1, q2, p.a, len, -k * omega - dtau));
      }
      total += std::real(acc);
    }
  }
  return total;
}

double sq_cos_tail(const std::vector<TailTerm>& tails, const std::vector<double>& coeff, double omega, double B) {
  double total = 0.0;
  for (const auto& a : tails)
    for (const auto& b : tails) {
      const double pw = a.gamma + b.gamma;
      double part = coeff[0] != 0.0 ? coeff[0] * std::real(power_exp_tail(pw, 0.0, B)) : 0.0;
      for (size_t k = 1; k < coeff.size(); ++k)
        if (coeff[k] != 0.0) part += coeff[k] * std::real(power_exp_tail(pw, k * omega, B));
      total += a.amp * b.amp * part;
    }
  return total;
}

}  // namespace

Region whole_line() { return {{-kInf, kInf}}; }

Region outside(double sigma) {
  if (sigma <= 0.0) return whole_line();
  return {{-kInf, -sigma}, {sigma, kInf}};
}

Region inside(double sigma) {
  if (sigma <= 0.0) return {};
  return {{-sigma, sigma}};
}

Region band(double lo, double hi) {
  if (!(hi > lo)) return {};
  return {{lo, hi}};
}

cplx Piece::eval(double v) const {
  cplx s = 0.0;
  if (bounded() && !terms.empty()) {
    const double x = (v - a) / (b - a);
    for (const auto& t : terms) s += lerp(t.ya, t.yb, x) * std::polar(1.0, -t.tau * v);
  }
  if (!tails.empty()) s += tail_sum(tails, v);
  return s;
}

bool Piece::aligned() const { return terms.size() == 1 && tails.empty() && bounded(); }

Piece restrict_piece(const Piece& p, double lo, double hi) {
  Piece r;
  r.a = lo;
  r.b = hi;
  r.tails = p.tails;
  if (p.bounded()) {
    const double len = p.b - p.a;
    for (const auto& t : p.terms) {
      PhaseTerm u = t;
      u.ya = lerp(t.ya, t.yb, (lo - p.a) / len);
      u.yb = lerp(t.ya, t.yb, (hi - p.a) / len);
      r.terms.push_back(u);
    }
  }
  return r;
}

std::vector<Piece> translate_pieces(const std::vector<Piece>& pieces, double shift) {
  std::vector<Piece> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) {
    if (!p.tails.empty()) throw InvalidSpectrum("translation of power tails is not supported");
    Piece q = p;
    q.a += shift;
    q.b += shift;
    // f(v - shift) carries exp(-i tau (v - shift)).
    for (auto& t : q.terms) {
      const cplx ph = std::polar(1.0, t.tau * shift);
      t.ya *= ph;
      t.yb *= ph;
    }
    out.push_back(std::move(q));
  }
  return out;
}

const std::vector<double>& gauss_nodes(int order) { return rule(order).nodes; }
const std::vector<double>& gauss_weights(int order) { return rule(order).weights; }

double gauss_legendre(const std::function<double(double)>& fn, double a, double b, int order) {
  const GaussRule& r = rule(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * fn(mid + half * r.nodes[i]);
  return sum * half;
}

double adaptive_quadrature(const std::function<double(double)>& fn, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_quadrature(fn, b, a, tol, max_depth);
  const double whole = gl32<double>(fn, a, b);
  return adapt<double>(fn, a, b, whole, tol * (1.0 + std::abs(whole)), max_depth);
}

double adaptive_rel(const std::function<double(double)>& fn, double a, double b, double rel_tol, double abs_floor,
                    int max_depth) {
  return adaptive_rel_impl<double>(fn, a, b, rel_tol, abs_floor, max_depth);
}

cplx adaptive_rel_complex(const std::function<cplx(double)>& fn, double a, double b, double rel_tol, double abs_floor,
                          int max_depth) {
  return adaptive_rel_impl<cplx>(fn, a, b, rel_tol, abs_floor, max_depth);
}

double semi_infinite_quadrature(const std::function<double(double)>& fn, double a, double p, double rel_tol) {
  if (!(a > 0.0)) throw NonConvergence("semi-infinite quadrature needs a positive start");
  if (!(p > 1.0)) throw DivergentIntegral("semi-infinite integrand decays too slowly");
  auto g = [&](double s) {
    const double v = a * std::exp(s);
    return fn(v) * v;
  };
  const double ratio = std::exp(1.0 - p);
  double total = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double chunk = adaptive_rel_impl<double>(g, k, k + 1.0, rel_tol, 0.0, 40);
    total += chunk;
    const double rest = std::abs(chunk) * ratio / (1.0 - ratio);
    if (k >= 2 && rest <= rel_tol * std::abs(total)) return total;
    if (k >= 2 && total == 0.0 && chunk == 0.0) return 0.0;
  }
  throw NonConvergence("semi-infinite quadrature did not settle");
}

void exp_moments(double theta, cplx out[3]) {
  if (std::abs(theta) < 2.0) {
    const cplx it(0.0, theta);
    for (int m = 0; m < 3; ++m) {
      cplx term = 1.0, sum = 0.0;
      for (int k = 0; k < 60; ++k) {
        const cplx add = term / static_cast<double>(m + k + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        term *= it / static_cast<double>(k + 1);
      }
      out[m] = sum;
    }
    return;
  }
  const cplx e = std::polar(1.0, theta);
  const cplx it(0.0, theta);
  out[0] = (e - 1.0) / it;
  out[1] = (e - out[0]) / it;
  out[2] = (e - 2.0 * out[1]) / it;
}

cplx poly_exp_integral(cplx q0, cplx q1, cplx q2, double a, double len, double nu) {
  cplx m[3];
  exp_moments(nu * len, m);
  return len * std::polar(1.0, nu * a) * (q0 * m[0] + q1 * m[1] + q2 * m[2]);
}

cplx power_exp_tail(double p, double omega, double x) {
  if (!(x > 0.0)) throw DivergentIntegral("power tail must start at a positive abscissa");
  if (omega == 0.0) {
    if (!(p > 1.0)) throw DivergentIntegral("non-oscillatory power tail with p <= 1");
    return std::pow(x, 1.0 - p) / (p - 1.0);
  }
  if (omega < 0.0) return std::conj(power_exp_tail(p, -omega, x));
  const double X = std::max(x, (40.0 + 4.0 * p) / omega);
  cplx total = 0.0;
  if (X > x) {
    auto f = [&](double s) { return std::pow(s, -p) * std::polar(1.0, omega * s); };
    const double period = kPi / omega;
    double lo = x;
    while (lo < X) {
      const double hi = std::min(X, lo + std::min(period, std::max(lo, 1e-300)));
      total += adaptive_rel_impl<cplx>(f, lo, hi, 1e-13, 1e-300, 50);
      lo = hi;
    }
  }
  // Repeated integration by parts beyond X.
  const cplx iw(0.0, omega);
  const cplx e = std::polar(1.0, omega * X);
  cplx coef = 1.0 / iw;
  double poch = 1.0;
  cplx series = 0.0;
  for (int m = 0; m < 40; ++m) {
    const cplx term = poch * std::pow(X, -p - m) * coef;
    series += term;
    if (std::abs(term) < 1e-18 * std::abs(series)) break;
    poch *= (p + m);
    coef /= iw;
  }
  return total - e * series;
}

double integrate_abs_q(const std::vector<Piece>& pieces, double q, double w, const Region& region,
                       const QuadConfig& cfg) {
  double total = 0.0;
  for_each_in_region(pieces, region, [&](const Piece& p) {
    if (p.bounded()) {
      if (p.terms.empty() && p.tails.empty()) return;
      total += finite_abs_q(p, q, w, cfg);
    } else {
      total += tail_abs_q(p.tails, q, w, tail_start(p));
    }
  });
  return total;
}

double integrate_sq_weighted(const std::vector<Piece>& pieces, const std::function<double(double)>& weight,
                             const Region& region, double growth, const QuadConfig& cfg) {
  double total = 0.0;
  for_each_in_region(pieces, region, [&](const Piece& p) {
    if (p.terms.empty() && p.tails.empty()) return;
    if (p.bounded()) {
      const double spread = max_tau_spread(p);
      const auto pts = chunk_points(p.a, p.b, spread > 0.0 ? kPi / spread : kInf, true);
      auto f = [&](double v) { return std::norm(p.eval(v)) * weight(v); };
      for (size_t i = 0; i + 1 < pts.size(); ++i) total += graded_at_origin(f, pts[i], pts[i + 1], 0.0, cfg, true);
    } else {
      const double gmin = tail_gamma_min(p.tails);
      if (2.0 * gmin - growth <= 1.0) throw DivergentIntegral("weighted L2 tail diverges");
      const double sgn = p.b == kInf ? 1.0 : -1.0;
      auto f = [&](double v) {
        const double s = tail_sum(p.tails, v);
        return s * s * weight(sgn * v);
      };
      total += semi_infinite_quadrature(f, tail_start(p), 2.0 * gmin - growth, cfg.rel_tol);
    }
  });
  return total;
}

double integrate_sq_cos(const std::vector<Piece>& pieces, const std::vector<double>& coeff, double omega,
                        const Region& region, const QuadConfig& cfg) {
  double total = 0.0;
  for_each_in_region(pieces, region, [&](const Piece& p) {
    if (p.terms.empty() && p.tails.empty()) return;
    if (p.bounded() && p.tails.empty()) {
      total += sq_cos_finite(p, coeff, omega);
    } else if (p.bounded()) {
      const double spread = std::max(max_tau_spread(p), (coeff.size() - 1.0) * std::abs(omega));
      const auto pts = chunk_points(p.a, p.b, spread > 0.0 ? kPi / spread : kInf, false);
      auto f = [&](double v) { return std::norm(p.eval(v)) * cos_series(coeff, omega, v); };
      for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += adaptive_rel_impl<double>(f, pts[i], pts[i + 1], cfg.rel_tol, 1e-300, cfg.max_depth);
    } else {
      total += sq_cos_tail(p.tails, coeff, omega, tail_start(p));
    }
  });
  return total;
}

double integrate_sq_sin_power(const std::vector<Piece>& pieces, int r, double h, const Region& region,
                              const QuadConfig& cfg) {
  if (r < 1) throw InvalidSpectrum("difference order must be positive");
  std::vector<double> coeff(r + 1);
  for (int k = 0; k <= r; ++k) {
    const double binom = std::round(std::exp(std::lgamma(2.0 * r + 1) - std::lgamma(r - k + 1.0) - std::lgamma(r + k + 1.0)));
    coeff[k] = k == 0 ? binom : 2.0 * ((k % 2) ? -binom : binom);
  }
  auto weight = [&](double v) { return std::pow(2.0 * std::sin(0.5 * h * v), 2 * r); };
  const GaussRule& g16 = rule(16);
  double total = 0.0;
  for_each_in_region(pieces, region, [&](const Piece& p) {
    if (p.terms.empty() && p.tails.empty()) return;
    if (p.bounded()) {
      const double len = p.b - p.a;
      const double spread = max_tau_spread(p);
      if (p.tails.empty() && r * h * len <= 2.0 && spread * len <= 2.0) {
        // Short piece: the weight is smooth across it, direct rule avoids cancellation near v = 0.
        const double mid = 0.5 * (p.a + p.b), half = 0.5 * len;
        double s = 0.0;
        for (size_t i = 0; i < g16.nodes.size(); ++i) {
          const double v = mid + half * g16.nodes[i];
          s += g16.weights[i] * std::norm(p.eval(v)) * weight(v);
        }
        total += s * half;
      } else if (p.tails.empty()) {
        total += sq_cos_finite(p, coeff, h);
      } else {
        const auto pts = chunk_points(p.a, p.b, kPi / std::max(spread, r * h), true);
        auto f = [&](double v) { return std::norm(p.eval(v)) * weight(v); };
        for (size_t i = 0; i + 1 < pts.size(); ++i)
          total += adaptive_rel_impl<double>(f, pts[i], pts[i + 1], cfg.rel_tol, 1e-300, cfg.max_depth);
      }
      return;
    }
    const double B = tail_start(p);
    const double X = std::max(B, 4.0 / h);
    if (X > B) {
      // Non-oscillatory stretch, integrated on a log scale.
      auto f = [&](double s) {
        const double v = std::exp(s);
        const double t = tail_sum(p.tails, v);
        return t * t * weight(v) * v;
      };
      total += adaptive_rel_impl<double>(f, std::log(B), std::log(X), cfg.rel_tol, 1e-300, cfg.max_depth);
    }
    total += sq_cos_tail(p.tails, coeff, h, X);
  });
  return total;
}

double piece_abs_q(const Piece& p, double q, double w, const QuadConfig& cfg) {
  if (p.terms.empty() && p.tails.empty()) return 0.0;
  if (p.bounded()) return finite_abs_q(p, q, w, cfg);
  return tail_abs_q(p.tails, q, w, tail_start(p));
}

cplx integrate_product(const std::vector<Piece>& p1, const std::vector<Piece>& p2, const QuadConfig& cfg) {
  cplx total = 0.0;
  size_t j = 0;
  for (size_t i = 0; i < p1.size(); ++i) {
    const Piece& A = p1[i];
    while (j < p2.size() && p2[j].b <= A.a) ++j;
    for (size_t k = j; k < p2.size() && p2[k].a < A.b; ++k) {
      const Piece& B = p2[k];
      const double lo = std::max(A.a, B.a), hi = std::min(A.b, B.b);
      if (!(hi > lo)) continue;
      if (lo > -kInf && hi < kInf) {
        const Piece a = restrict_piece(A, lo, hi);
        const Piece b = restrict_piece(B, lo, hi);
        if (a.tails.empty() && b.tails.empty()) {
          const double len = hi - lo;
          for (const auto& ta : a.terms)
            for (const auto& tb : b.terms) {
              const cplx da = ta.yb - ta.ya, db = tb.yb - tb.ya;
              const cplx q0 = ta.ya * std::conj(tb.ya);
              const cplx q1 = ta.ya * std::conj(db) + da * std::conj(tb.ya);
              const cplx q2 = da * std::conj(db);
              total += poly_exp_integral(q0, q1, q2, lo, len, -(ta.tau - tb.tau));
            }
        } else {
          const double spread = std::max(max_tau_spread(a), max_tau_spread(b)) * 2.0;
          const auto pts = chunk_points(lo, hi, spread > 0.0 ? kPi / spread : kInf, false);
          auto f = [&](double v) { return a.eval(v) * std::conj(b.eval(v)); };
          for (size_t m = 0; m + 1 < pts.size(); ++m)
            total += adaptive_rel_impl<cplx>(f, pts[m], pts[m + 1], cfg.rel_tol, 1e-300, cfg.max_depth);
        }
      } else {
        const double start = hi == kInf ? lo : -hi;
        for (const auto& ta : A.tails)
          for (const auto& tb : B.tails) total += ta.amp * tb.amp * std::real(power_exp_tail(ta.gamma + tb.gamma, 0.0, start));
      }
    }
  }
  return total;
}

cplx oscillatory_inversion(const std::vector<Piece>& pieces, double t, const Region& region,
                           const std::function<cplx(double)>& multiplier, double rel_tol) {
  cplx total = 0.0;
  for_each_in_region(pieces, region, [&](const Piece& p) {
    if (p.terms.empty() && p.tails.empty()) return;
    if (!p.bounded()) throw DivergentIntegral("inversion over an unbounded region with power tails");
    if (!multiplier && p.tails.empty()) {
      const double len = p.b - p.a;
      for (const auto& term : p.terms)
        total += poly_exp_integral(term.ya, term.yb - term.ya, 0.0, p.a, len, t - term.tau);
      return;
    }
    double freq = std::abs(t);
    for (const auto& term : p.terms) freq = std::max(freq, std::abs(t - term.tau));
    const double step = freq > 1e-8 ? kPi / freq : kInf;
    const auto pts = chunk_points(p.a, p.b, step, true);
    auto f = [&](double v) {
      cplx val = p.eval(v) * std::polar(1.0, v * t);
      if (multiplier) val *= multiplier(v);
      return val;
    };
    for (size_t i = 0; i + 1 < pts.size(); ++i)
      total += adaptive_rel_impl<cplx>(f, pts[i], pts[i + 1], rel_tol, 1e-300, 40);
  });
  return total * kInvSqrt2Pi;
}

}  // namespace bandlim
