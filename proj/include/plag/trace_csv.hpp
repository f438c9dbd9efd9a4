#pragma once

#include <plag/diagnostics.hpp>
#include <plag/text.hpp>

#include <array>
#include <istream>
#include <ostream>
#include <string_view>

namespace plag {

inline constexpr std::array<std::string_view, 11> trace_columns{
    "k",      "objective", "feasibility", "optimality", "lagrangian", "norm_x",
    "norm_lambda", "norm_mu", "step_x_norm", "gamma", "delta"};

inline void write_trace_csv(std::ostream& out, const Trace& trace) {
  for (std::size_t i = 0; i < trace_columns.size(); ++i)
    out << (i ? "," : "") << trace_columns[i];
  out << '\n';
  for (const auto& r : trace.records) {
    out << r.k;
    for (double v : {r.objective, r.feasibility, r.optimality, r.lagrangian, r.norm_x,
                     r.norm_lambda, r.norm_mu, r.step_x_norm, r.gamma, r.delta})
      out << ',' << text::format_double(v);
    out << '\n';
  }
}

/// Reads the scalar columns back. The full iterate vectors are not stored in
/// the CSV, so they stay empty.
inline std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("empty trace file", 0);
  ++lineno;
  const auto header = text::split(text::trim(line), ",");
  if (header.size() != trace_columns.size())
    throw ParseError("trace header has " + std::to_string(header.size()) + " columns", lineno);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (text::trim(header[i]) != trace_columns[i])
      throw ParseError("unexpected trace column '" + std::string(header[i]) + "'", lineno);

  std::vector<TraceRecord> records;
  while (std::getline(in, line)) {
    ++lineno;
    const auto content = text::trim(line);
    if (content.empty()) continue;
    const auto fields = text::split(content, ",");
    if (fields.size() != trace_columns.size())
      throw ParseError("expected " + std::to_string(trace_columns.size()) + " fields", lineno);
    TraceRecord r;
    const auto k = text::parse_integer(fields[0]);
    if (!k) throw ParseError("invalid iteration index '" + std::string(fields[0]) + "'", lineno);
    r.k = static_cast<Index>(*k);
    double* targets[] = {&r.objective, &r.feasibility, &r.optimality, &r.lagrangian,
                         &r.norm_x,    &r.norm_lambda, &r.norm_mu,    &r.step_x_norm,
                         &r.gamma,     &r.delta};
    for (std::size_t i = 0; i < 10; ++i) {
      const auto v = text::parse_double(fields[i + 1]);
      if (!v) throw ParseError("non-numeric field '" + std::string(fields[i + 1]) + "'", lineno);
      *targets[i] = *v;
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace plag
