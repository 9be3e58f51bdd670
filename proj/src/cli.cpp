#include "bandlim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bandlim/distances.hpp"
#include "bandlim/errors.hpp"
#include "bandlim/formulas.hpp"
#include "bandlim/modulation.hpp"
#include "bandlim/rates.hpp"
#include "bandlim/riesz.hpp"
#include "bandlim/smoothness.hpp"

namespace bandlim {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

// ------------------------------------------------------------------ spec parsing

void check_number(const json& obj, const std::string& key, const std::string& path, bool required,
                  const std::function<bool(double)>& ok, const std::string& rule, std::vector<std::string>& errs) {
  if (!obj.contains(key)) {
    if (required) errs.push_back(path + "/" + key + ": missing");
    return;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) {
    errs.push_back(path + "/" + key + ": expected a number");
    return;
  }
  const double x = v.get<double>();
  if (!std::isfinite(x) || !ok(x)) errs.push_back(path + "/" + key + ": " + rule);
}

void check_keys(const json& obj, const std::string& path, const std::vector<std::string>& allowed,
                std::vector<std::string>& errs) {
  for (const auto& [k, _] : obj.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) errs.push_back(path + "/" + k + ": unknown key");
}

std::vector<std::string> validate_json(const json& doc) {
  std::vector<std::string> errs;
  const auto any = [](double) { return true; };
  const auto positive = [](double x) { return x > 0.0; };
  if (!doc.is_object()) return {"/: expected an object"};
  check_keys(doc, "", {"atoms", "tails"}, errs);
  if (doc.contains("atoms")) {
    const json& atoms = doc.at("atoms");
    if (!atoms.is_array()) {
      errs.push_back("/atoms: expected an array");
    } else {
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::string path = "/atoms/" + std::to_string(i);
        const json& a = atoms[i];
        if (!a.is_object()) {
          errs.push_back(path + ": expected an object");
          continue;
        }
        const std::string type = a.value("kind", "");
        if (type == "triangle") {
          check_keys(a, path, {"kind", "amp", "b", "c", "tau"}, errs);
          check_number(a, "b", path, true, positive, "must be positive", errs);
        } else if (type == "rect") {
          check_keys(a, path, {"kind", "amp", "w", "c", "tau"}, errs);
          check_number(a, "w", path, true, positive, "must be positive", errs);
        } else {
          errs.push_back(path + "/kind: expected \"triangle\" or \"rect\"");
          continue;
        }
        for (const char* k : {"amp", "c", "tau"}) check_number(a, k, path, false, any, "must be finite", errs);
      }
    }
  }
  if (doc.contains("tails")) {
    const json& tails = doc.at("tails");
    if (!tails.is_array()) {
      errs.push_back("/tails: expected an array");
    } else {
      for (std::size_t i = 0; i < tails.size(); ++i) {
        const std::string path = "/tails/" + std::to_string(i);
        const json& t = tails[i];
        if (!t.is_object()) {
          errs.push_back(path + ": expected an object");
          continue;
        }
        check_keys(t, path, {"gamma", "amp", "cutoff"}, errs);
        check_number(t, "gamma", path, true, [](double g) { return g > 0.5; }, "must exceed 1/2", errs);
        check_number(t, "amp", path, false, any, "must be finite", errs);
        check_number(t, "cutoff", path, false, positive, "must be positive", errs);
      }
    }
  }
  return errs;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Spectrum spectrum_from_json(const json& doc) {
  const auto errs = validate_json(doc);
  if (!errs.empty()) {
    std::string msg = "invalid spectrum:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw ParseError(msg);
  }
  std::vector<Atom> atoms;
  for (const auto& a : doc.value("atoms", json::array())) {
    if (a.at("kind") == "triangle")
      atoms.push_back(TriangleAtom{a.value("amp", 1.0), a.at("b").get<double>(), a.value("c", 0.0), a.value("tau", 0.0)});
    else
      atoms.push_back(RectAtom{a.value("amp", 1.0), a.at("w").get<double>(), a.value("c", 0.0), a.value("tau", 0.0)});
  }
  std::vector<PowerTail> tails;
  for (const auto& t : doc.value("tails", json::array()))
    tails.push_back({t.at("gamma").get<double>(), t.value("amp", 1.0), t.value("cutoff", 1.0)});
  return Spectrum(std::move(atoms), std::move(tails));
}

// ------------------------------------------------------------------ output

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return fmt17(*d);
  return std::to_string(std::get<long>(c));
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return fmt17(*d);
    return json(fmt17(*d)).dump();
  }
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return json(std::get<std::string>(c)).dump();
}

const char* pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

// ------------------------------------------------------------------ options

struct Options {
  std::string f;
  std::string g;
  double gamma = 1.75;
  double delta = 0.0;
  long trunc = 0;
  double q = 2.0;
  std::vector<double> sigma;
  std::string sigma_range;
  std::vector<double> h;
  std::string h_range;
  std::string delta_range;
  std::vector<double> t{0.0};
  double alpha = 1.0;
  // Negative selects the subcommand default.
  int order = -1;
  std::vector<double> epsilon_list;
  std::string quantity = "dist";
  double tol = 1e-9;
  std::string format = "csv";
  std::string out;
};

std::vector<double> parse_range(const std::string& text, const char* flag) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (parts.size() != 3 || !(parts[0] > 0.0) || !(parts[1] > parts[0]) || !(parts[2] >= 2.0))
    throw ParseError(std::string(flag) + ": expected lo,hi,n with 0 < lo < hi and n >= 2");
  return log_grid(parts[0], parts[1], static_cast<int>(parts[2]));
}

std::vector<double> values_or_range(const std::vector<double>& single, const std::string& range, const char* flag,
                                    std::vector<double> fallback) {
  if (!range.empty()) return parse_range(range, flag);
  if (!single.empty()) return single;
  return fallback;
}

std::vector<double> sigma_values(const Options& o) {
  auto v = values_or_range(o.sigma, o.sigma_range, "--sigma-range", {});
  if (v.empty()) throw ParseError("--sigma or --sigma-range is required");
  for (double s : v)
    if (!(s > 0.0)) throw ParseError("--sigma: values must be positive");
  return v;
}

std::vector<double> h_values(const Options& o) {
  auto v = values_or_range(o.h, o.h_range, "--h-range", {});
  if (v.empty()) throw ParseError("--h or --h-range is required");
  for (double h : v)
    if (!(h > 0.0)) throw ParseError("--h: values must be positive");
  return v;
}

int order_or(const Options& o, int fallback) { return o.order < 0 ? fallback : o.order; }

ResolvedFunction function_of(const Options& o, const std::string& text) {
  if (text.empty()) throw ParseError("--f is required");
  return resolve_function(text, o.gamma, o.delta, o.trunc);
}

// Known lower bounds for dist from the builtin constructions; nullopt when none applies.
std::optional<double> dist_lower_bound(const std::optional<FamilySpec>& fam, double q, double sigma, int order) {
  if (!fam || q != 2.0 || order != 0) return std::nullopt;
  if (fam->name == "dyadic_log" && sigma >= 4.0)
    return (2.0 * std::sqrt(2.0 * kPi) / 3.0) * std::pow(std::log(2.0) / (3.0 * std::log(sigma)), 1.5);
  if (fam->name == "f_gamma_delta" && fam->delta == 0.0)
    return std::sqrt(4.0 * kPi * std::pow(sigma + 2.0, 2.0 - 2.0 * fam->gamma) / (3.0 * (2.0 * fam->gamma - 2.0)));
  return std::nullopt;
}

// Grows an unpinned builtin series until every omitted atom lies beyond sigma_max.
ResolvedFunction covering(const ResolvedFunction& fn, const Options& o, double sigma_max) {
  if (!fn.family || o.trunc != 0 || !fn.spectrum.trunc()) return fn;
  FamilySpec fam = *fn.family;
  fam.N = fam.last_term();
  Spectrum s = fn.spectrum;
  const long cap = fam.name.rfind("dyadic", 0) == 0 ? 40 : 1L << 22;
  while (s.trunc()->omitted_from < sigma_max && fam.N < cap) {
    fam.N = std::min(cap, 2 * fam.N);
    s = build(fam);
  }
  return {s, fam};
}

// dist of the function with the omitted part of a truncated series added back when it is exact.
double series_value(const ResolvedFunction& fn, double q, double sigma, int order, double& budget) {
  budget = 0.0;
  const auto& tr = fn.spectrum.trunc();
  if (tr && q == 2.0 && order == 0 && sigma <= tr->omitted_from) return std::sqrt(series_dist2(fn.spectrum, sigma));
  const double v = order == 0 ? dist(fn.spectrum, q, sigma) : dist_derivative(fn.spectrum, q, sigma, order);
  if (tr) {
    if (order == 0 && q == 1.0)
      budget = tr->bound("l1");
    else if (order == 0 && q == 2.0)
      budget = std::sqrt(v * v + tr->bound("l2_sq")) - v;
    else
      budget = kInf;
  }
  return v;
}

// ------------------------------------------------------------------ subcommands

Table cmd_dist(const Options& o) {
  const auto sigmas = sigma_values(o);
  const auto fn = covering(function_of(o, o.f), o, *std::max_element(sigmas.begin(), sigmas.end()));
  Table t{{"quantity", "q", "sigma", "order", "value", "budget", "bound", "verdict"}, {}};
  const int order = order_or(o, 0);
  for (double sigma : sigmas) {
    double budget = 0.0;
    const double v = series_value(fn, o.q, sigma, order, budget);
    const auto lb = dist_lower_bound(fn.family, o.q, sigma, order);
    t.rows.push_back({std::string(order == 0 ? "dist" : "dist_derivative"), o.q, sigma, static_cast<long>(order), v,
                      budget, lb ? Cell(*lb) : Cell(std::string()),
                      lb ? Cell(std::string(pass_fail(v + budget >= *lb * (1.0 - o.tol)))) : Cell(std::string())});
  }
  return t;
}

Table cmd_smoothness(const Options& o) {
  const auto fn = function_of(o, o.f);
  const auto deltas = values_or_range({}, o.delta_range, "--delta-range", log_grid(std::exp2(-12.0), 0.25, 21));
  Table t{{"quantity", "order", "delta", "value", "budget", "bound", "verdict"}, {}};
  const int r = order_or(o, 1);
  for (const auto& m : modulus_profile(fn.spectrum, r, deltas))
    t.rows.push_back({std::string("modulus"), static_cast<long>(r), m.delta, m.value, 0.0, std::string(),
                      std::string()});
  if (!fn.spectrum.empty() && deltas.size() >= 4) {
    std::vector<Point> pts;
    for (const auto& row : t.rows) pts.push_back({std::get<double>(row[2]), std::get<double>(row[3])});
    const RateFit fit = loglog_fit(pts);
    t.rows.push_back({std::string("lipschitz_slope"), static_cast<long>(r), deltas.front(), fit.slope,
                      1.0 - fit.r_squared, std::string(), std::string()});
  }
  return t;
}

Table cmd_riesz(const Options& o) {
  const auto fn = function_of(o, o.f);
  std::vector<double> eps = o.epsilon_list;
  if (eps.empty())
    for (int k = 0; k <= 10; ++k) eps.push_back(std::exp2(-k));
  Table t{{"quantity", "alpha", "j", "epsilon", "value", "budget", "bound", "verdict"}, {}};
  const int j = order_or(o, 1);
  t.rows.push_back({std::string("constant"), o.alpha, static_cast<long>(j), 0.0, c_alpha(o.alpha, j), 0.0,
                    std::string(), std::string()});
  const auto errs = riesz_convergence(fn.spectrum, o.alpha, j, eps);
  for (std::size_t i = 0; i < eps.size(); ++i)
    t.rows.push_back({std::string("convergence_error"), o.alpha, static_cast<long>(j), eps[i], errs[i], 0.0,
                      std::string(), std::string()});
  return t;
}

Table cmd_modulation(const Options& o) {
  const auto fn = function_of(o, o.f);
  Table t{{"quantity", "h", "value", "budget", "bound", "verdict"}, {}};
  const BandSum m = m21_with_budget(fn.spectrum);
  t.rows.push_back({std::string("m21"), 1.0, m.value, m.budget, std::string(), std::string()});
  std::vector<double> hs = values_or_range(o.h, o.h_range, "--h-range", {});
  const ModulationProfile prof = n_sup(fn.spectrum, hs);
  for (std::size_t i = 0; i < prof.h_grid.size(); ++i)
    t.rows.push_back({std::string("n_h"), prof.h_grid[i], prof.values[i], prof.budgets[i], std::string(),
                      std::string()});
  t.rows.push_back({std::string("n_sup_lower"), 0.0, prof.sup_lower_bound, 0.0, std::string(), std::string()});
  return t;
}

Table cmd_sampling(const Options& o) {
  const auto fn = function_of(o, o.f);
  Table t{{"quantity", "h", "t", "value", "budget", "bound", "verdict"}, {}};
  for (double h : h_values(o)) {
    const auto reps = wks_report(fn.spectrum, h, o.t);
    for (std::size_t i = 0; i < o.t.size(); ++i)
      t.rows.push_back({std::string("wks_remainder"), h, o.t[i], std::abs(reps[i].remainder),
                        reps[i].truncation_budget, reps[i].bound, std::string(pass_fail(reps[i].holds()))});
  }
  return t;
}

Table cmd_rkf(const Options& o) {
  const auto fn = function_of(o, o.f);
  Table t{{"quantity", "h", "t", "value", "budget", "bound", "verdict"}, {}};
  for (double h : h_values(o))
    for (double tt : o.t) {
      const auto r = rkf_report(fn.spectrum, h, tt);
      t.rows.push_back({std::string("rkf_remainder"), h, tt, std::abs(r.remainder), r.truncation_budget, r.bound,
                        std::string(pass_fail(r.holds()))});
    }
  return t;
}

Table cmd_parseval(const Options& o) {
  const auto f = function_of(o, o.f);
  const auto g = o.g.empty() ? f : function_of(o, o.g);
  Table t{{"quantity", "h", "aliasing", "value", "budget", "bound", "verdict"}, {}};
  for (double h : h_values(o)) {
    const auto r = parseval(f.spectrum, g.spectrum, h);
    t.rows.push_back({std::string("parseval_remainder"), h, std::abs(r.aliasing), std::abs(r.remainder),
                      r.truncation_budget, std::string(),
                      std::string(pass_fail(r.consistent(o.tol * std::max(1.0, std::abs(r.integral)))))});
  }
  return t;
}

Table cmd_bernstein(const Options& o) {
  const auto fn = function_of(o, o.f);
  Table t{{"quantity", "order", "sigma", "value", "budget", "bound", "verdict"}, {}};
  for (double sigma : sigma_values(o)) {
    const int order = order_or(o, 1);
    const auto r = bernstein_check(fn.spectrum, order, sigma);
    t.rows.push_back({std::string("derivative_norm"), static_cast<long>(order), sigma, r.lhs, 0.0,
                      r.classical + r.dist_term, std::string(pass_fail(r.holds(o.tol)))});
  }
  return t;
}

Table cmd_nikolskii(const Options& o) {
  const auto fn = function_of(o, o.f);
  Table t{{"quantity", "h", "sigma", "value", "budget", "bound", "verdict"}, {}};
  for (double h : h_values(o))
    for (double sigma : sigma_values(o)) {
      const auto r = nikolskii_check(fn.spectrum, h, sigma);
      t.rows.push_back({std::string("sample_norm"), h, sigma, r.sum.value, r.sum.budget, r.bound,
                        std::string(pass_fail(r.holds()))});
    }
  return t;
}

Table cmd_counterexample(const Options& o) {
  const auto fn = function_of(o, o.f);
  if (!fn.family) throw ParseError("counterexample needs --f builtin:<family>");
  const auto rep = membership_report(*fn.family);
  Table t{{"quantity", "expected", "observed", "value", "budget", "bound", "verdict"}, {}};
  for (const auto& c : rep.claims)
    t.rows.push_back({c.name, c.expected, c.observed, std::string(), std::string(), std::string(),
                      std::string(pass_fail(c.pass))});
  return t;
}

Table cmd_rates(const Options& o) {
  auto fn = function_of(o, o.f);
  std::vector<Point> pts;
  Limit limit = Limit::ToInfinity;
  if (o.quantity == "dist") {
    const auto xs = values_or_range(o.sigma, o.sigma_range, "--sigma-range", log_grid(16.0, 4096.0, 17));
    fn = covering(fn, o, *std::max_element(xs.begin(), xs.end()));
    for (double x : xs) {
      double budget = 0.0;
      pts.push_back({x, series_value(fn, o.q, x, 0, budget)});
    }
  } else if (o.quantity == "modulus") {
    limit = Limit::ToZero;
    const auto xs = values_or_range({}, o.delta_range, "--delta-range", log_grid(std::exp2(-12.0), 0.25, 21));
    for (const auto& m : modulus_profile(fn.spectrum, order_or(o, 1), xs)) pts.push_back({m.delta, m.value});
  } else if (o.quantity == "n_h") {
    limit = Limit::ToZero;
    const auto xs = values_or_range(o.h, o.h_range, "--h-range", log_grid(std::exp2(-10.0), 1.0, 21));
    for (double x : xs) pts.push_back({x, n_h(fn.spectrum, x)});
  } else {
    throw ParseError("--quantity must be dist, modulus or n_h");
  }
  Table t{{"quantity", "x", "value", "budget", "bound", "verdict"}, {}};
  for (const auto& [x, y] : pts) t.rows.push_back({o.quantity, x, y, 0.0, std::string(), std::string()});
  const RateFit fit = loglog_fit(pts);
  t.rows.push_back({std::string("slope"), fit.window_min, fit.slope, 1.0 - fit.r_squared, std::string(), std::string()});
  const auto tr = oh_vs_big_oh(pts, -fit.slope, limit);
  t.rows.push_back({std::string("trend_at_fitted_exponent"), fit.window_max, tr.trend, 0.0, std::string(),
                    to_string(tr.verdict)});
  return t;
}

}  // namespace

std::vector<std::string> validate_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    return {std::string("/: malformed JSON: ") + e.what()};
  }
  return validate_json(doc);
}

Spectrum parse_spectrum(const std::string& json_text) { return spectrum_from_json(parse_json(json_text)); }

std::string spectrum_to_json(const Spectrum& s) {
  json doc;
  doc["atoms"] = json::array();
  doc["tails"] = json::array();
  for (const auto& a : s.atoms()) {
    if (const auto* t = std::get_if<TriangleAtom>(&a))
      doc["atoms"].push_back({{"kind", "triangle"}, {"amp", t->amp}, {"b", t->b}, {"c", t->c}, {"tau", t->tau}});
    else {
      const auto& r = std::get<RectAtom>(a);
      doc["atoms"].push_back({{"kind", "rect"}, {"amp", r.amp}, {"w", r.w}, {"c", r.c}, {"tau", r.tau}});
    }
  }
  for (const auto& t : s.tails()) doc["tails"].push_back({{"gamma", t.gamma}, {"amp", t.amp}, {"cutoff", t.cutoff}});
  return doc.dump();
}

ResolvedFunction resolve_function(const std::string& text, double gamma, double delta, long trunc) {
  const std::string prefix = "builtin:";
  if (text.rfind(prefix, 0) == 0) {
    FamilySpec fam;
    fam.name = text.substr(prefix.size());
    const auto& names = family_names();
    if (std::find(names.begin(), names.end(), fam.name) == names.end()) {
      std::string list;
      for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
      throw InvalidFamilyParams("unknown builtin '" + fam.name + "'; available: " + list);
    }
    fam.gamma = gamma;
    fam.delta = delta;
    fam.N = trunc;
    return {build(fam), fam};
  }
  if (text == "sinc") return {sinc_spectrum(), std::nullopt};
  if (!text.empty() && text.front() == '{') return {parse_spectrum(text), std::nullopt};
  std::ifstream in(text);
  if (!in) throw ParseError("cannot open function spec '" + text + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return {parse_spectrum(buf.str()), std::nullopt};
}

bool Table::failed() const {
  const auto it = std::find(columns.begin(), columns.end(), "verdict");
  if (it == columns.end()) return false;
  const auto col = static_cast<std::size_t>(it - columns.begin());
  return std::any_of(rows.begin(), rows.end(), [col](const auto& r) { return cell_text(r[col]) == "FAIL"; });
}

std::string format_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(cell_text(row[i]));
    out += "\n";
  }
  return out;
}

std::string format_json(const Table& t) {
  std::string out = "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n {" : "\n {";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
      out += (i ? ", " : "") + json(t.columns[i]).dump() + ": " + json_cell(t.rows[r][i]);
    out += "}";
  }
  return out + "\n]\n";
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Distances from bandlimitedness, smoothness classes and extended sampling formulas"};
  app.require_subcommand(1);
  // -h is taken by the step size.
  app.set_help_flag("--help", "print help");

  const std::map<std::string, std::pair<std::string, std::function<Table(const Options&)>>> commands{
      {"dist", {"L^q distance from B_sigma (or of the order-th derivative)", cmd_dist}},
      {"smoothness", {"modulus of smoothness profile and Lipschitz slope", cmd_smoothness}},
      {"riesz", {"Riesz derivative constant and convergence in epsilon", cmd_riesz}},
      {"modulation", {"amalgam norm and N_h profile", cmd_modulation}},
      {"sampling", {"sampling series remainder against its bound", cmd_sampling}},
      {"rkf", {"reproducing kernel remainder against its bound", cmd_rkf}},
      {"parseval", {"Parseval sampling remainder with aliasing cross-check", cmd_parseval}},
      {"bernstein", {"Bernstein inequality beyond bandlimited functions", cmd_bernstein}},
      {"nikolskii", {"Nikolskii inequality beyond bandlimited functions", cmd_nikolskii}},
      {"counterexample", {"membership claims for a builtin family", cmd_counterexample}},
      {"rates", {"log-log rate fit of dist, modulus or n_h", cmd_rates}},
  };
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--f", o.f, "function: builtin:<family>, sinc, inline JSON or JSON file")->required();
    sub->add_option("--g", o.g, "second function (parseval)");
    sub->add_option("--gamma", o.gamma, "family exponent gamma");
    sub->add_option("--delta", o.delta, "family log exponent delta");
    sub->add_option("--trunc", o.trunc, "last series term N (0 = family default)");
    sub->add_option("--q", o.q, "L^q exponent in [1, 2]");
    sub->add_option("--sigma", o.sigma, "band limits")->delimiter(',');
    sub->add_option("--sigma-range", o.sigma_range, "lo,hi,n log grid");
    sub->add_option("--h", o.h, "step sizes")->delimiter(',');
    sub->add_option("--h-range", o.h_range, "lo,hi,n log grid");
    sub->add_option("--delta-range", o.delta_range, "lo,hi,n log grid");
    sub->add_option("--t", o.t, "evaluation points")->delimiter(',');
    sub->add_option("--alpha", o.alpha, "Riesz order alpha");
    sub->add_option("--order", o.order, "difference/derivative order or kernel index j");
    sub->add_option("--epsilon-list", o.epsilon_list, "epsilon values")->delimiter(',');
    sub->add_option("--quantity", o.quantity, "rates: dist, modulus or n_h");
    sub->add_option("--tol", o.tol, "relative slack in PASS/FAIL comparisons");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const Table table = commands.at(sub->get_name()).second(o);
    const std::string text = o.format == "json" ? format_json(table) : format_csv(table);
    if (o.out.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out);
      if (!file) throw ParseError("cannot write '" + o.out + "'");
      file << text;
    }
    return table.failed() ? 2 : 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace bandlim
