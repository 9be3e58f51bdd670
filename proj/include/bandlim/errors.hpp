#pragma once

#include <stdexcept>
#include <string>

namespace bandlim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedTimeEval : Error { using Error::Error; };
struct DivergentIntegral : Error { using Error::Error; };
struct DivergentSum : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct DegenerateFit : Error { using Error::Error; };
struct NotInSpace : Error { using Error::Error; };
struct SingularParameter : Error { using Error::Error; };
struct InvalidSpectrum : Error { using Error::Error; };
struct InvalidFamilyParams : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace bandlim
