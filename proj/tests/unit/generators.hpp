#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "bandlim/spectrum.hpp"

namespace gen {

inline constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  bandlim::TriangleAtom triangle() {
    return {uniform(0.2, 2.0) * (coin() ? 1.0 : -1.0), log_uniform(0.05, 2.0), uniform(-10.0, 10.0),
            uniform(-2.0, 2.0)};
  }

  bandlim::RectAtom rect() {
    return {uniform(0.2, 2.0), log_uniform(0.2, 5.0), uniform(-10.0, 10.0), uniform(-2.0, 2.0)};
  }

  bandlim::Atom atom() {
    if (coin()) return triangle();
    return rect();
  }

  bandlim::Spectrum spectrum(int max_atoms = 3) {
    std::vector<bandlim::Atom> atoms;
    int n = integer(1, max_atoms);
    for (int i = 0; i < n; ++i) atoms.push_back(atom());
    return bandlim::Spectrum(std::move(atoms));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline bandlim::Spectrum single(const bandlim::Atom& a) { return bandlim::Spectrum({a}); }

inline bandlim::Spectrum unit_triangle() { return single(bandlim::TriangleAtom{1.0, 1.0, 0.0, 0.0}); }

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace gen
