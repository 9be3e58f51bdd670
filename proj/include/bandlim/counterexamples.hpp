#pragma once

#include <string>
#include <vector>

#include "bandlim/spectrum.hpp"

namespace bandlim {

struct FamilySpec {
  std::string name = "f_gamma_delta";
  double gamma = 1.75;
  double delta = 0.0;
  // Last term index; 0 selects the family default.
  long N = 0;

  void validate() const;
  long first_term() const;
  long last_term() const;
};

const std::vector<std::string>& family_names();

Spectrum build(const FamilySpec& spec);

// ||f||_{L2[n, n+1]} of the untruncated series.
double band_l2(const FamilySpec& spec, long n);

// sum_{n > N} n^{-p} (ln n)^{-q}; +inf when divergent.
double power_log_tail(double p, double q, long N);

// dist_2 of the untruncated series: truncated value plus the exact remainder when every omitted atom
// lies beyond sigma.
double series_dist2(const Spectrum& truncated, double sigma);

// Antiderivative of the dyadic_sqrt series: atoms 2^{-n/2} / (2^n - 1/2) at 2^n - 1/2, n = 1..N, so the
// derivative has dyadic_sqrt's band norms up to a factor in [1/2, 2] and lies in Mn.
Spectrum dyadic_sqrt_antiderivative(long N);

struct Claim {
  std::string name;
  std::string expected;
  std::string observed;
  bool pass = false;
};

struct MembershipReport {
  std::string family;
  FamilySpec spec;
  std::vector<Claim> claims;
  std::string note;

  bool all_pass() const;
};

MembershipReport membership_report(const FamilySpec& spec);

}  // namespace bandlim
