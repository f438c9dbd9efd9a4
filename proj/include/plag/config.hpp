#pragma once

// Run configuration: a flat "key = value" file merged with command-line
// overrides. Vectors are comma-separated.

#include <plag/iterate.hpp>
#include <plag/text.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plag {

struct Setting {
  std::string value;
  std::size_t line = 0;  ///< 0 for command-line flags
};

using Settings = std::map<std::string, Setting>;

struct RunConfig {
  std::string problem;
  std::optional<Vector> x0;
  SolverParams params;
  std::filesystem::path trace_path;
  std::filesystem::path report_path;
  bool check_invariants = false;
  std::vector<std::string> warnings;
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "problem", "x0",        "step_size", "alpha",    "beta",
      "delta0",  "decay",     "tol_opt",   "tol_feas", "max_iters",
      "divergence_bound",     "trace",     "report",   "stride",
      "check_invariants"};
  return keys;
}

/// Parses "key = value" lines; '#' starts a comment. Duplicate keys are an error.
inline Settings parse_settings(std::istream& in) {
  Settings out;
  text::LineReader reader(in);
  while (auto line = reader.next()) {
    const auto eq = line->find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", reader.line());
    const std::string key(text::trim(line->substr(0, eq)));
    const std::string value(text::trim(line->substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", reader.line());
    if (out.count(key)) throw ParseError("duplicate key '" + key + "'", reader.line());
    out[key] = {value, reader.line()};
  }
  return out;
}

inline Settings read_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'", 0);
  return parse_settings(in);
}

namespace detail {

inline std::string describe(const std::string& key, const Setting& s) {
  return s.line > 0 ? "key '" + key + "'" : "flag '" + key + "'";
}

inline double number(const std::string& key, const Setting& s) {
  const auto v = text::parse_double(s.value);
  if (!v) throw ParseError("malformed number '" + s.value + "' for " + describe(key, s), s.line);
  return *v;
}

inline Index integer(const std::string& key, const Setting& s) {
  const auto v = text::parse_integer(s.value);
  if (!v) throw ParseError("malformed integer '" + s.value + "' for " + describe(key, s), s.line);
  return static_cast<Index>(*v);
}

inline bool boolean(const std::string& key, const Setting& s) {
  if (s.value == "true" || s.value == "1" || s.value == "yes") return true;
  if (s.value == "false" || s.value == "0" || s.value == "no") return false;
  throw ParseError("malformed boolean '" + s.value + "' for " + describe(key, s), s.line);
}

inline Vector vector(const std::string& key, const Setting& s) {
  const auto parts = text::split(s.value, ", \t");
  if (parts.empty()) throw ParseError("empty vector for " + describe(key, s), s.line);
  Vector v(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto d = text::parse_double(parts[i]);
    if (!d)
      throw ParseError("malformed number '" + std::string(parts[i]) + "' for " + describe(key, s),
                       s.line);
    v[static_cast<Index>(i)] = *d;
  }
  return v;
}

}  // namespace detail

/// Merges file settings with flag overrides (flags win) and applies defaults:
/// alpha 2000, beta 0.5, decay 0.999, delta0 1, tolerances 1e-6, 200000
/// iterations, stride 1. step_size and problem are required.
inline RunConfig parse_config(const Settings& file, const Settings& flags = {}) {
  Settings merged = file;
  for (const auto& [k, v] : flags) merged[k] = v;

  const auto& known = config_keys();
  for (const auto& [key, s] : merged)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError("unknown " + detail::describe(key, s), s.line);

  auto get = [&](const std::string& key) -> const Setting* {
    auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };

  RunConfig cfg;
  const Setting* problem = get("problem");
  if (!problem || problem->value.empty()) throw ParseError("missing required key 'problem'", 0);
  cfg.problem = problem->value;

  const Setting* step = get("step_size");
  if (!step) throw ParseError("missing required key 'step_size'", 0);

  double alpha = 2000.0, beta = 0.5;
  if (auto* s = get("alpha")) alpha = detail::number("alpha", *s);
  if (auto* s = get("beta")) beta = detail::number("beta", *s);
  try {
    cfg.params.penalty = PenaltyParams(alpha, beta);
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), (get("alpha") ? get("alpha") : get("beta"))->line);
  }

  cfg.params.step_size = detail::number("step_size", *step);
  if (auto* s = get("delta0")) cfg.params.delta0 = detail::number("delta0", *s);
  if (auto* s = get("decay")) cfg.params.decay = detail::number("decay", *s);
  if (auto* s = get("tol_opt")) cfg.params.tol_optimality = detail::number("tol_opt", *s);
  if (auto* s = get("tol_feas")) cfg.params.tol_feasibility = detail::number("tol_feas", *s);
  if (auto* s = get("max_iters")) cfg.params.max_iterations = detail::integer("max_iters", *s);
  if (auto* s = get("divergence_bound"))
    cfg.params.divergence_bound = detail::number("divergence_bound", *s);
  if (auto* s = get("stride")) cfg.params.trace_stride = detail::integer("stride", *s);
  if (auto* s = get("x0")) cfg.x0 = detail::vector("x0", *s);
  if (auto* s = get("trace")) cfg.trace_path = s->value;
  if (auto* s = get("report")) cfg.report_path = s->value;
  if (auto* s = get("check_invariants")) cfg.check_invariants = detail::boolean("check_invariants", *s);

  try {
    cfg.params.validate();
  } catch (const ParameterError& e) {
    throw ParseError(e.what(), 0);
  }
  if (cfg.params.decay < 0.9)
    cfg.warnings.push_back("decay r = " + text::format_short(cfg.params.decay) +
                           " is small; choose the reduction ratio close to 1 (e.g. 0.999), "
                           "otherwise mu settles early and lambda may stay far from a KKT multiplier");
  return cfg;
}

inline RunConfig parse_config_file(const std::filesystem::path& path, const Settings& flags = {}) {
  return parse_config(read_settings_file(path), flags);
}

}  // namespace plag
