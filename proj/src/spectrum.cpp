#include "bandlim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "bandlim/errors.hpp"

namespace bandlim {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

struct Segment {
  double a;
  double b;
  double tau;
  double ya;
  double yb;
};

void validate(const std::vector<Atom>& atoms, const std::vector<PowerTail>& tails) {
  for (const auto& atom : atoms) {
    if (const auto* t = std::get_if<TriangleAtom>(&atom)) {
      if (!(t->b > 0.0) || !std::isfinite(t->b)) throw InvalidSpectrum("triangle atom needs b > 0");
      if (!std::isfinite(t->amp) || !std::isfinite(t->c) || !std::isfinite(t->tau))
        throw InvalidSpectrum("triangle atom has non-finite fields");
    } else {
      const auto& r = std::get<RectAtom>(atom);
      if (!(r.w > 0.0) || !std::isfinite(r.w)) throw InvalidSpectrum("rect atom needs w > 0");
      if (!std::isfinite(r.amp) || !std::isfinite(r.c) || !std::isfinite(r.tau))
        throw InvalidSpectrum("rect atom has non-finite fields");
    }
  }
  for (const auto& t : tails) {
    if (!(t.gamma > 0.5)) throw InvalidSpectrum("power tail needs gamma > 1/2");
    if (!(t.cutoff > 0.0) || !std::isfinite(t.amp)) throw InvalidSpectrum("power tail needs cutoff > 0");
  }
}

std::vector<Segment> segments_of(const std::vector<Atom>& atoms) {
  std::vector<Segment> segs;
  segs.reserve(2 * atoms.size());
  for (const auto& atom : atoms) {
    if (const auto* t = std::get_if<TriangleAtom>(&atom)) {
      if (t->amp == 0.0) continue;
      const double hw = t->half_width(), pk = t->peak();
      segs.push_back({t->c - hw, t->c, t->tau, 0.0, pk});
      segs.push_back({t->c, t->c + hw, t->tau, pk, 0.0});
    } else {
      const auto& r = std::get<RectAtom>(atom);
      if (r.amp == 0.0) continue;
      const double y = r.amp / kSqrt2Pi;
      segs.push_back({r.c - r.w, r.c + r.w, r.tau, y, y});
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  return segs;
}

void add_term(Piece& p, double tau, double ya, double yb) {
  for (auto& t : p.terms) {
    if (t.tau == tau) {
      t.ya += ya;
      t.yb += yb;
      return;
    }
  }
  p.terms.push_back({tau, ya, yb});
}

std::vector<TailTerm> tail_terms(const std::vector<PowerTail>& tails, double lo, double hi) {
  std::vector<TailTerm> out;
  for (const auto& t : tails)
    if (lo >= t.cutoff || hi <= -t.cutoff) out.push_back({t.gamma, t.amp});
  return out;
}

}  // namespace

double TriangleAtom::half_width() const { return 2.0 * kPi * b; }
double TriangleAtom::peak() const { return amp / (kSqrt2Pi * b); }

double Truncation::bound(const std::string& key) const {
  auto it = tail_bounds.find(key);
  return it == tail_bounds.end() ? 0.0 : it->second;
}

struct Spectrum::Cache {
  std::once_flag built;
  std::vector<Piece> pieces;
  std::vector<double> breakpoints;
  std::mutex mu;
  std::map<std::string, double> values;
};

std::shared_ptr<Spectrum::Cache> Spectrum::new_cache() { return std::make_shared<Cache>(); }

Spectrum::Spectrum(std::vector<Atom> atoms, std::vector<PowerTail> tails, std::optional<Truncation> trunc)
    : atoms_(std::move(atoms)), tails_(std::move(tails)), trunc_(std::move(trunc)) {
  validate(atoms_, tails_);
}

const std::vector<Piece>& Spectrum::pieces() const {
  std::call_once(cache_->built, [this] {
    const auto segs = segments_of(atoms_);
    std::vector<double> bp;
    bp.reserve(2 * segs.size() + 4 * tails_.size() + atoms_.size());
    for (const auto& s : segs) {
      bp.push_back(s.a);
      bp.push_back(s.b);
    }
    double far = 0.0;
    for (const auto& t : tails_) {
      bp.push_back(-t.cutoff);
      bp.push_back(t.cutoff);
    }
    for (double x : bp) far = std::max(far, std::abs(x));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    cache_->breakpoints = bp;
    // Tails switch to closed forms past twice the outermost breakpoint.
    if (!tails_.empty()) {
      bp.insert(bp.begin(), -2.0 * far);
      bp.push_back(2.0 * far);
    }

    auto& out = cache_->pieces;
    bool disjoint = tails_.empty();
    for (size_t i = 1; disjoint && i < segs.size(); ++i) disjoint = segs[i - 1].b <= segs[i].a;
    if (disjoint) {
      out.reserve(segs.size());
      for (const auto& s : segs) {
        if (!(s.b > s.a)) continue;
        Piece p;
        p.a = s.a;
        p.b = s.b;
        p.terms.push_back({s.tau, s.ya, s.yb});
        out.push_back(std::move(p));
      }
      return;
    }
    if (!tails_.empty()) {
      Piece left;
      left.a = -kInf;
      left.b = bp.front();
      left.tails = tail_terms(tails_, -kInf, bp.front());
      out.push_back(left);
    }
    std::vector<size_t> active;
    size_t next = 0;
    for (size_t k = 0; k + 1 < bp.size(); ++k) {
      const double lo = bp[k], hi = bp[k + 1];
      while (next < segs.size() && segs[next].a <= lo) active.push_back(next++);
      active.erase(std::remove_if(active.begin(), active.end(), [&](size_t i) { return segs[i].b <= lo; }),
                   active.end());
      Piece p;
      p.a = lo;
      p.b = hi;
      for (size_t i : active) {
        const auto& s = segs[i];
        const double len = s.b - s.a;
        const double ya = s.ya + (s.yb - s.ya) * (lo - s.a) / len;
        const double yb = s.ya + (s.yb - s.ya) * (hi - s.a) / len;
        add_term(p, s.tau, ya, yb);
      }
      p.tails = tail_terms(tails_, lo, hi);
      if (!p.terms.empty() || !p.tails.empty()) out.push_back(std::move(p));
    }
    if (!tails_.empty()) {
      Piece right;
      right.a = bp.back();
      right.b = kInf;
      right.tails = tail_terms(tails_, bp.back(), kInf);
      out.push_back(right);
    }
  });
  return cache_->pieces;
}

const std::vector<double>& Spectrum::breakpoints() const {
  pieces();
  return cache_->breakpoints;
}

double Spectrum::support_radius() const {
  double r = 0.0;
  for (const auto& atom : atoms_) {
    if (const auto* t = std::get_if<TriangleAtom>(&atom)) {
      r = std::max(r, std::abs(t->c) + t->half_width());
    } else {
      const auto& q = std::get<RectAtom>(atom);
      r = std::max(r, std::abs(q.c) + q.w);
    }
  }
  return r;
}

Spectrum Spectrum::scaled(double k) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& atom : atoms) std::visit([k](auto& a) { a.amp *= k; }, atom);
  std::vector<PowerTail> tails = tails_;
  for (auto& t : tails) t.amp *= k;
  std::optional<Truncation> trunc = trunc_;
  if (trunc) {
    for (auto& [key, val] : trunc->tail_bounds) val *= (key == "l2_sq" || key == "weighted_half") ? k * k : std::abs(k);
  }
  return Spectrum(std::move(atoms), std::move(tails), std::move(trunc));
}

Spectrum Spectrum::dilated(double lambda) const {
  if (!(lambda > 0.0)) throw InvalidSpectrum("dilation factor must be positive");
  std::vector<Atom> atoms;
  atoms.reserve(atoms_.size());
  for (const auto& atom : atoms_) {
    if (const auto* t = std::get_if<TriangleAtom>(&atom)) {
      atoms.push_back(TriangleAtom{t->amp / lambda, t->b / lambda, t->c / lambda, t->tau * lambda});
    } else {
      const auto& r = std::get<RectAtom>(atom);
      atoms.push_back(RectAtom{r.amp, r.w / lambda, r.c / lambda, r.tau * lambda});
    }
  }
  std::vector<PowerTail> tails;
  for (const auto& t : tails_) tails.push_back({t.gamma, t.amp * std::pow(lambda, -t.gamma), t.cutoff / lambda});
  return Spectrum(std::move(atoms), std::move(tails));
}

Spectrum Spectrum::with_trunc(std::optional<Truncation> trunc) const {
  Spectrum s(atoms_, tails_, std::move(trunc));
  return s;
}

double Spectrum::cached(const std::string& key, double (*compute)(const Spectrum&)) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  const double v = compute(*this);
  std::lock_guard<std::mutex> lock(cache_->mu);
  cache_->values.emplace(key, v);
  return v;
}

Spectrum operator+(const Spectrum& a, const Spectrum& b) {
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  std::vector<PowerTail> tails = a.tails();
  tails.insert(tails.end(), b.tails().begin(), b.tails().end());
  return Spectrum(std::move(atoms), std::move(tails));
}

Spectrum sinc_spectrum(double amp) { return Spectrum({RectAtom{amp, kPi, 0.0, 0.0}}); }

double sinc(double x) {
  const double px = kPi * x;
  if (std::abs(px) < 1e-6) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

cplx spectral_density(const Spectrum& s, double v) {
  cplx sum = 0.0;
  for (const auto& atom : s.atoms()) {
    if (const auto* t = std::get_if<TriangleAtom>(&atom)) {
      const double d = std::abs(v - t->c), hw = t->half_width();
      if (d < hw) sum += t->peak() * (1.0 - d / hw) * std::polar(1.0, -v * t->tau);
    } else {
      const auto& r = std::get<RectAtom>(atom);
      if (std::abs(v - r.c) < r.w) sum += (r.amp / kSqrt2Pi) * std::polar(1.0, -v * r.tau);
    }
  }
  for (const auto& t : s.tails())
    if (std::abs(v) >= t.cutoff) sum += t.amp * std::pow(std::abs(v), -t.gamma);
  return sum;
}

cplx time_eval(const Spectrum& s, double t) {
  if (!s.tail_free()) throw UnsupportedTimeEval("time evaluation is unavailable for power tails");
  cplx sum = 0.0;
  for (const auto& atom : s.atoms()) {
    if (const auto* a = std::get_if<TriangleAtom>(&atom)) {
      const double x = t - a->tau;
      const double sc = sinc(a->b * x);
      sum += a->amp * sc * sc * std::polar(1.0, a->c * x);
    } else {
      const auto& r = std::get<RectAtom>(atom);
      const double x = t - r.tau;
      sum += r.amp * (r.w / kPi) * sinc(r.w * x / kPi) * std::polar(1.0, r.c * x);
    }
  }
  return sum;
}

cplx inner_product(const Spectrum& s1, const Spectrum& s2) { return integrate_product(s1.pieces(), s2.pieces()); }

double l2_norm(const Spectrum& s) {
  return s.cached("l2", [](const Spectrum& x) { return std::sqrt(integrate_abs_q(x.pieces(), 2.0, 0.0, whole_line())); });
}

double l1_spectral_norm(const Spectrum& s) {
  return s.cached("l1", [](const Spectrum& x) { return integrate_abs_q(x.pieces(), 1.0, 0.0, whole_line()); });
}

std::vector<double> breakpoints(const Spectrum& s) { return s.breakpoints(); }

EnvelopeDecay envelope_decay(const Spectrum& s) {
  EnvelopeDecay e;
  if (!s.tail_free()) {
    e.sup = kInf;
    e.a1 = kInf;
    return e;
  }
  for (const auto& atom : s.atoms()) {
    if (const auto* t = std::get_if<TriangleAtom>(&atom)) {
      e.a2 += std::abs(t->amp) / ((kPi * t->b) * (kPi * t->b));
      e.sup += std::abs(t->amp);
      e.shift = std::max(e.shift, std::abs(t->tau));
    } else {
      const auto& r = std::get<RectAtom>(atom);
      e.a1 += std::abs(r.amp) / kPi;
      e.sup += std::abs(r.amp) * r.w / kPi;
      e.shift = std::max(e.shift, std::abs(r.tau));
    }
  }
  return e;
}

double time_envelope(const Spectrum& s, double R) {
  if (!s.tail_free()) return kInf;
  double sum = 0.0;
  for (const auto& atom : s.atoms()) {
    if (const auto* t = std::get_if<TriangleAtom>(&atom)) {
      const double d = R - std::abs(t->tau);
      const double k = d > 0.0 ? 1.0 / (kPi * t->b * d) : kInf;
      sum += std::abs(t->amp) * std::min(1.0, k * k);
    } else {
      const auto& r = std::get<RectAtom>(atom);
      const double d = R - std::abs(r.tau);
      const double k = d > 0.0 ? 1.0 / (r.w * d) : kInf;
      sum += std::abs(r.amp) * (r.w / kPi) * std::min(1.0, k);
    }
  }
  return sum;
}

}  // namespace bandlim
