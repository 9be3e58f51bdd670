#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bandlim/counterexamples.hpp"
#include "bandlim/spectrum.hpp"

namespace bandlim {

// Error messages prefixed with the JSON path of the offending value; empty when the spec is valid.
std::vector<std::string> validate_spec(const std::string& json_text);

// Throws ParseError listing every problem found by validate_spec.
Spectrum parse_spectrum(const std::string& json_text);
std::string spectrum_to_json(const Spectrum& s);

// A function given on the command line: builtin:<family>, sinc, inline JSON or a JSON file.
struct ResolvedFunction {
  Spectrum spectrum;
  std::optional<FamilySpec> family;
};
ResolvedFunction resolve_function(const std::string& text, double gamma, double delta, long trunc);

using Cell = std::variant<std::string, double, long>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // True when some verdict column reads FAIL.
  bool failed() const;
};

std::string format_csv(const Table& t);
std::string format_json(const Table& t);

// Exit codes: 0 success, 2 when a PASS/FAIL report contains failures, 1 on errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bandlim
