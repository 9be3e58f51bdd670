#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace bandlim {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo;
  double hi;
};

// Union of disjoint intervals, possibly unbounded.
using Region = std::vector<Interval>;

Region whole_line();
Region outside(double sigma);  // |v| >= sigma
Region inside(double sigma);   // |v| <= sigma
Region band(double lo, double hi);

struct QuadConfig {
  double rel_tol = 1e-10;
  int max_depth = 40;
};

// Linear envelope (ya at a, yb at b) carrying the phase exp(-i tau v).
struct PhaseTerm {
  double tau = 0.0;
  cplx ya;
  cplx yb;
};

// amp * |v|^{-gamma}
struct TailTerm {
  double gamma = 1.0;
  double amp = 1.0;
};

// Spectral density restricted to [a, b]. Unbounded pieces hold tails only.
struct Piece {
  double a = 0.0;
  double b = 0.0;
  std::vector<PhaseTerm> terms;
  std::vector<TailTerm> tails;

  bool bounded() const { return a > -kInf && b < kInf; }
  cplx eval(double v) const;
  // Single phase, no tails: |density| is piecewise linear.
  bool aligned() const;
};

Piece restrict_piece(const Piece& p, double lo, double hi);
std::vector<Piece> translate_pieces(const std::vector<Piece>& pieces, double shift);

const std::vector<double>& gauss_nodes(int order);
const std::vector<double>& gauss_weights(int order);

double gauss_legendre(const std::function<double(double)>& fn, double a, double b, int order = 32);

// |result - true| <= tol * (1 + |result|); throws NonConvergence past the depth limit.
double adaptive_quadrature(const std::function<double(double)>& fn, double a, double b,
                           double tol = 1e-10, int max_depth = 40);

// Relative-tolerance variants used on pieces; abs_floor guards vanishing integrands.
double adaptive_rel(const std::function<double(double)>& fn, double a, double b, double rel_tol,
                    double abs_floor = 0.0, int max_depth = 40);
cplx adaptive_rel_complex(const std::function<cplx(double)>& fn, double a, double b, double rel_tol,
                          double abs_floor = 0.0, int max_depth = 40);

// int_a^inf fn(v) dv for fn = O(v^-p), p > 1, via v = a e^s.
double semi_infinite_quadrature(const std::function<double(double)>& fn, double a, double p,
                                double rel_tol = 1e-10);

// int_0^1 x^m e^{i theta x} dx for m = 0, 1, 2.
void exp_moments(double theta, cplx out[3]);

// int_a^{a+len} (q0 + q1 x + q2 x^2) e^{i nu v} dv with x = (v - a) / len.
cplx poly_exp_integral(cplx q0, cplx q1, cplx q2, double a, double len, double nu);

// int_x^inf s^{-p} e^{i omega s} ds for x > 0, p > 0 (p > 1 when omega = 0).
cplx power_exp_tail(double p, double omega, double x);

// sum over interval pieces of int |f|^q |v|^w.
double integrate_abs_q(const std::vector<Piece>& pieces, double q, double w, const Region& region,
                       const QuadConfig& cfg = {});

// int weight(v) |f(v)|^2 dv. growth bounds weight(v) <= C |v|^growth for tail convergence.
double integrate_sq_weighted(const std::vector<Piece>& pieces, const std::function<double(double)>& weight,
                             const Region& region, double growth, const QuadConfig& cfg = {});

// int |f(v)|^2 sum_k coeff[k] cos(k omega v) dv, closed form on tail-free pieces.
double integrate_sq_cos(const std::vector<Piece>& pieces, const std::vector<double>& coeff, double omega,
                        const Region& region, const QuadConfig& cfg = {});

// int |f(v)|^2 (2 sin(h v / 2))^{2r} dv.
double integrate_sq_sin_power(const std::vector<Piece>& pieces, int r, double h, const Region& region,
                              const QuadConfig& cfg = {});

// int over one piece of |f|^q |v|^w.
double piece_abs_q(const Piece& p, double q, double w, const QuadConfig& cfg = {});

// int f1(v) conj(f2(v)) dv.
cplx integrate_product(const std::vector<Piece>& p1, const std::vector<Piece>& p2, const QuadConfig& cfg = {});

// (1/sqrt(2 pi)) int_region m(v) f(v) e^{ivt} dv; multiplier may be empty. Region must be bounded
// when tails are present.
cplx oscillatory_inversion(const std::vector<Piece>& pieces, double t, const Region& region,
                           const std::function<cplx(double)>& multiplier = nullptr, double rel_tol = 1e-9);

}  // namespace bandlim
