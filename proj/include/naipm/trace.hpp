#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "naipm/solver.hpp"

namespace naipm {

enum class TraceFormat { Table, Csv, Json };

TraceFormat parse_trace_format(std::string_view name);

struct TraceRow {
  int iter = 0;
  Ban mu;
  BanVector x;
  std::vector<double> f_levels;  // objective coefficients of eta^0, eta^1, ...
};

struct Trace {
  std::size_t levels = 1;
  std::vector<TraceRow> rows;
};

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Trace make_trace(const SolveResult& result, std::size_t levels);

/// Columns iter, mu, x1..xn, f_level_0..; ban entries as literals, reals in
/// shortest round-trip form.
std::string trace_to_csv(const Trace& t);
Trace trace_from_csv(std::string_view text);

std::string trace_to_json(const Trace& t);
Trace trace_from_json(std::string_view text);

/// Fixed-point table for terminal output: leading monosemium of mu, full x
/// and objective.
std::string trace_to_table(const SolveResult& result);

std::string format_trace(const SolveResult& result, std::size_t levels, TraceFormat format);

/// Distinct powers of mu along the trace, consecutive repeats collapsed.
std::vector<int> mu_staircase(const SolveResult& result);

}  // namespace naipm
