#include "naipm/trace.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace naipm {

namespace {

using nlohmann::json;

std::string real_to_string(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view s, std::size_t line) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw TraceFormatError("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

Ban parse_entry(std::string_view s, std::size_t line) {
  try {
    return parse_ban(s);
  } catch (const BanParseError& e) {
    throw TraceFormatError("line " + std::to_string(line) + ": " + e.what());
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

TraceFormat parse_trace_format(std::string_view name) {
  if (name == "table") return TraceFormat::Table;
  if (name == "csv") return TraceFormat::Csv;
  if (name == "json") return TraceFormat::Json;
  throw std::invalid_argument("unknown trace format '" + std::string(name) + "'");
}

Trace make_trace(const SolveResult& result, std::size_t levels) {
  Trace t;
  t.levels = levels;
  for (const IterationRecord& rec : result.trace) {
    TraceRow row;
    row.iter = rec.iter;
    row.mu = rec.mu;
    row.x = rec.x;
    for (std::size_t k = 0; k < levels; ++k) {
      row.f_levels.push_back(rec.objective.coeff_at_power(-static_cast<int>(k)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string trace_to_csv(const Trace& t) {
  std::ostringstream out;
  const std::size_t n = t.rows.empty() ? 0 : t.rows.front().x.size();
  out << "iter,mu";
  for (std::size_t i = 0; i < n; ++i) out << ",x" << i + 1;
  for (std::size_t k = 0; k < t.levels; ++k) out << ",f_level_" << k;
  out << '\n';
  for (const TraceRow& r : t.rows) {
    out << r.iter << ',' << to_string(r.mu);
    for (const Ban& v : r.x) out << ',' << to_string(v);
    for (double f : r.f_levels) out << ',' << real_to_string(f);
    out << '\n';
  }
  return out.str();
}

Trace trace_from_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  for (std::string_view l : split(text, '\n')) {
    if (!l.empty()) lines.push_back(l);
  }
  if (lines.empty()) throw TraceFormatError("empty trace");
  const auto header = split(lines[0], ',');
  if (header.size() < 2 || header[0] != "iter" || header[1] != "mu") {
    throw TraceFormatError("line 1: expected header starting with iter,mu");
  }
  std::size_t n = 0;
  Trace t;
  t.levels = 0;
  for (std::size_t i = 2; i < header.size(); ++i) {
    if (header[i].starts_with("x")) {
      ++n;
    } else if (header[i].starts_with("f_level_")) {
      ++t.levels;
    } else {
      throw TraceFormatError("line 1: unknown column '" + std::string(header[i]) + "'");
    }
  }
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto cells = split(lines[li], ',');
    if (cells.size() != header.size()) {
      throw TraceFormatError("line " + std::to_string(li + 1) + ": expected " +
                             std::to_string(header.size()) + " columns");
    }
    TraceRow r;
    r.iter = static_cast<int>(parse_real(cells[0], li + 1));
    r.mu = parse_entry(cells[1], li + 1);
    for (std::size_t i = 0; i < n; ++i) r.x.push_back(parse_entry(cells[2 + i], li + 1));
    for (std::size_t k = 0; k < t.levels; ++k) r.f_levels.push_back(parse_real(cells[2 + n + k], li + 1));
    t.rows.push_back(std::move(r));
  }
  return t;
}

std::string trace_to_json(const Trace& t) {
  json rows = json::array();
  for (const TraceRow& r : t.rows) {
    json x = json::array();
    for (const Ban& v : r.x) x.push_back(to_string(v));
    rows.push_back({{"iter", r.iter}, {"mu", to_string(r.mu)}, {"x", x}, {"f_levels", r.f_levels}});
  }
  json doc = {{"levels", t.levels}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

Trace trace_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TraceFormatError(e.what());
  }
  try {
    Trace t;
    t.levels = doc.at("levels").get<std::size_t>();
    for (const json& r : doc.at("rows")) {
      TraceRow row;
      row.iter = r.at("iter").get<int>();
      row.mu = parse_entry(r.at("mu").get<std::string>(), 0);
      for (const json& v : r.at("x")) row.x.push_back(parse_entry(v.get<std::string>(), 0));
      row.f_levels = r.at("f_levels").get<std::vector<double>>();
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const json::exception& e) {
    throw TraceFormatError(e.what());
  }
}

std::string trace_to_table(const SolveResult& result) {
  std::vector<std::string> mus, xs;
  std::size_t mu_w = 2, x_w = 1;
  for (const IterationRecord& rec : result.trace) {
    std::string x = "[";
    for (std::size_t i = 0; i < rec.x.size(); ++i) x += (i ? ", " : "") + format_fixed(rec.x[i]);
    x += ']';
    mus.push_back(format_fixed(lead_mon(rec.mu)));
    xs.push_back(std::move(x));
    mu_w = std::max(mu_w, mus.back().size());
    x_w = std::max(x_w, xs.back().size());
  }
  std::ostringstream out;
  out << std::left << std::setw(6) << "iter" << std::setw(static_cast<int>(mu_w + 2)) << "mu"
      << std::setw(static_cast<int>(x_w + 2)) << "x" << "f(x)\n";
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    out << std::setw(6) << result.trace[k].iter << std::setw(static_cast<int>(mu_w + 2)) << mus[k]
        << std::setw(static_cast<int>(x_w + 2)) << xs[k] << format_fixed(result.trace[k].objective) << '\n';
  }
  return out.str();
}

std::string format_trace(const SolveResult& result, std::size_t levels, TraceFormat format) {
  switch (format) {
    case TraceFormat::Table:
      return trace_to_table(result);
    case TraceFormat::Csv:
      return trace_to_csv(make_trace(result, levels));
    case TraceFormat::Json:
      return trace_to_json(make_trace(result, levels));
  }
  return {};
}

std::vector<int> mu_staircase(const SolveResult& result) {
  std::vector<int> out;
  for (const IterationRecord& rec : result.trace) {
    if (rec.mu.is_zero()) continue;
    if (out.empty() || out.back() != rec.mu.power()) out.push_back(rec.mu.power());
  }
  return out;
}

}  // namespace naipm
