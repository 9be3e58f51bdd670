#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bandlim/numerics.hpp"

namespace bandlim {

// amp * sinc^2(b (t - tau)) * exp(i c (t - tau)); triangular density on [c - 2 pi b, c + 2 pi b].
struct TriangleAtom {
  double amp = 1.0;
  double b = 1.0;
  double c = 0.0;
  double tau = 0.0;

  double half_width() const;
  double peak() const;
};

// Flat density amp / sqrt(2 pi) on (c - w, c + w).
struct RectAtom {
  double amp = 1.0;
  double w = 1.0;
  double c = 0.0;
  double tau = 0.0;
};

// amp * |v|^{-gamma} for |v| >= cutoff. Frequency-side only.
struct PowerTail {
  double gamma = 1.0;
  double amp = 1.0;
  double cutoff = 1.0;
};

using Atom = std::variant<TriangleAtom, RectAtom>;

// Describes the omitted remainder of a truncated series.
struct Truncation {
  std::string series;
  long n_terms = 0;
  // Keys: "l2_sq", "l1", "m21", "weighted_half". Values may be +inf when the remainder diverges.
  std::map<std::string, double> tail_bounds;
  // Smallest |v| reached by the support of any omitted term.
  double omitted_from = kInf;

  double bound(const std::string& key) const;
};

class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(std::vector<Atom> atoms, std::vector<PowerTail> tails = {}, std::optional<Truncation> trunc = std::nullopt);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<PowerTail>& tails() const { return tails_; }
  const std::optional<Truncation>& trunc() const { return trunc_; }
  bool tail_free() const { return tails_.empty(); }
  bool empty() const { return atoms_.empty() && tails_.empty(); }

  // Non-overlapping pieces covering the support, sorted by left endpoint.
  const std::vector<Piece>& pieces() const;
  const std::vector<double>& breakpoints() const;

  // Largest |v| in any atom support (0 if none).
  double support_radius() const;

  Spectrum scaled(double k) const;
  // Density v -> f(lambda v).
  Spectrum dilated(double lambda) const;
  Spectrum with_trunc(std::optional<Truncation> trunc) const;

  double cached(const std::string& key, double (*compute)(const Spectrum&)) const;

 private:
  struct Cache;
  static std::shared_ptr<Cache> new_cache();
  std::vector<Atom> atoms_;
  std::vector<PowerTail> tails_;
  std::optional<Truncation> trunc_;
  std::shared_ptr<Cache> cache_ = new_cache();
};

Spectrum operator+(const Spectrum& a, const Spectrum& b);

Spectrum sinc_spectrum(double amp = 1.0);

cplx spectral_density(const Spectrum& s, double v);
cplx time_eval(const Spectrum& s, double t);
cplx inner_product(const Spectrum& s1, const Spectrum& s2);
double l2_norm(const Spectrum& s);
double l1_spectral_norm(const Spectrum& s);
std::vector<double> breakpoints(const Spectrum& s);

// Bound on sup_{|x| >= R} |f(x)| from atom decay; +inf for tails.
double time_envelope(const Spectrum& s, double R);

// Coefficients of envelope(R) <= a1 / (R - T) + a2 / (R - T)^2 for R > T.
struct EnvelopeDecay {
  double a1 = 0.0;
  double a2 = 0.0;
  double shift = 0.0;
  double sup = 0.0;
};
EnvelopeDecay envelope_decay(const Spectrum& s);

double sinc(double x);

}  // namespace bandlim
