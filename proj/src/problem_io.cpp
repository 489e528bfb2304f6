#include "naipm/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace naipm {

namespace {

using nlohmann::json;

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Ban to_ban(const json& j, const std::string& where) {
  if (j.is_number()) return Ban(j.get<double>());
  if (!j.is_string()) throw ProblemFormatError(where + ": expected a ban literal string");
  try {
    return parse_ban(j.get<std::string>());
  } catch (const BanParseError& e) {
    throw ProblemFormatError(where + ": " + e.what());
  }
}

BanVector to_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw ProblemFormatError(where + ": expected an array");
  BanVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(to_ban(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

BanMatrix to_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ProblemFormatError(where + ": expected a non-empty array of rows");
  std::vector<BanVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(to_vector(j[i], where + "[" + std::to_string(i) + "]"));
  BanMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ProblemFormatError(where + ": rows have different lengths");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ProblemFormatError(where + ": missing field '" + key + "'");
  return *it;
}

json from_vector(const BanVector& v) {
  json out = json::array();
  for (const Ban& x : v) out.push_back(to_string(x));
  return out;
}

json from_matrix(const BanMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(from_vector(m.row(i)));
  return out;
}

}  // namespace

LexProblem parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ProblemFormatError("syntax error at " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) +
                             ": " + e.what());
  }
  if (!doc.is_object()) throw ProblemFormatError("problem document must be an object");

  LexProblem p;
  if (auto it = doc.find("sense"); it != doc.end()) {
    const std::string sense = it->is_string() ? it->get<std::string>() : "";
    if (sense == "minimize" || sense == "min") {
      p.sense = Sense::Minimize;
    } else if (sense == "maximize" || sense == "max") {
      p.sense = Sense::Maximize;
    } else {
      throw ProblemFormatError("sense: expected \"minimize\" or \"maximize\"");
    }
  }

  const json& objectives = field(doc, "objectives", "problem");
  if (!objectives.is_array() || objectives.empty()) {
    throw ProblemFormatError("objectives: expected a non-empty array");
  }
  for (std::size_t k = 0; k < objectives.size(); ++k) {
    const std::string where = "objectives[" + std::to_string(k) + "]";
    const json& o = objectives[k];
    if (!o.is_object()) throw ProblemFormatError(where + ": expected an object");
    Objective obj;
    obj.c = to_vector(field(o, "c", where), where + ".c");
    if (auto it = o.find("Q"); it != o.end()) obj.q = to_matrix(*it, where + ".Q");
    p.objectives.push_back(std::move(obj));
  }

  const json& constraints = field(doc, "constraints", "problem");
  if (!constraints.is_array()) throw ProblemFormatError("constraints: expected an array");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const std::string where = "constraints[" + std::to_string(i) + "]";
    const json& c = constraints[i];
    if (!c.is_object()) throw ProblemFormatError(where + ": expected an object");
    Constraint con;
    con.a = to_vector(field(c, "a", where), where + ".a");
    con.b = to_ban(field(c, "b", where), where + ".b");
    const json& rel = field(c, "rel", where);
    const std::string r = rel.is_string() ? rel.get<std::string>() : "";
    if (r == "<=") {
      con.rel = Relation::LessEqual;
    } else if (r == "=" || r == "==") {
      con.rel = Relation::Equal;
    } else if (r == ">=") {
      con.rel = Relation::GreaterEqual;
    } else {
      throw ProblemFormatError(where + ".rel: expected \"<=\", \"=\" or \">=\"");
    }
    p.constraints.push_back(std::move(con));
  }

  const std::size_t n = p.objectives.front().c.size();
  if (auto it = doc.find("bounds"); it != doc.end()) {
    if (!it->is_array()) throw ProblemFormatError("bounds: expected an array");
    for (std::size_t j = 0; j < it->size(); ++j) {
      const json& b = (*it)[j];
      const std::string v = b.is_string() ? b.get<std::string>() : "";
      if (v == "nonneg") {
        p.bounds.push_back(Bound::NonNegative);
      } else if (v == "free") {
        p.bounds.push_back(Bound::Free);
      } else {
        throw ProblemFormatError("bounds[" + std::to_string(j) + "]: expected \"nonneg\" or \"free\"");
      }
    }
  } else {
    p.bounds.assign(n, Bound::NonNegative);
  }

  try {
    validate(p);
  } catch (const ModelError& e) {
    throw ProblemFormatError(e.what());
  }
  return p;
}

LexProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ProblemFormatError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem(buf.str());
  } catch (const ProblemFormatError& e) {
    throw ProblemFormatError(path.string() + ": " + e.what());
  }
}

std::string problem_to_json(const LexProblem& p, int indent) {
  json doc;
  doc["sense"] = p.sense == Sense::Maximize ? "maximize" : "minimize";
  doc["objectives"] = json::array();
  for (const Objective& o : p.objectives) {
    json obj;
    if (!o.q.empty()) obj["Q"] = from_matrix(o.q);
    obj["c"] = from_vector(o.c);
    doc["objectives"].push_back(obj);
  }
  doc["constraints"] = json::array();
  for (const Constraint& c : p.constraints) {
    const char* rel = c.rel == Relation::LessEqual ? "<=" : (c.rel == Relation::Equal ? "=" : ">=");
    doc["constraints"].push_back({{"a", from_vector(c.a)}, {"rel", rel}, {"b", to_string(c.b)}});
  }
  doc["bounds"] = json::array();
  for (Bound b : p.bounds) doc["bounds"].push_back(b == Bound::Free ? "free" : "nonneg");
  return doc.dump(indent);
}

std::string embedded_to_json(const EmbeddedProblem& e, int indent) {
  json doc;
  doc["weights"] = {{"p1", to_string(e.weights.p1)}, {"p2", to_string(e.weights.p2)}};
  doc["artificial_column"] = e.artificial + 1;
  doc["slack_column"] = e.slack + 1;
  doc["added_row"] = e.added_row + 1;
  doc["A"] = from_matrix(e.form.a);
  doc["b"] = from_vector(e.form.b);
  doc["c"] = from_vector(e.form.c);
  doc["Q"] = from_matrix(e.form.q);
  return doc.dump(indent);
}

}  // namespace naipm
