#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "naipm/model.hpp"

namespace naipm {

/// Malformed problem document. The message carries a line/column or the
/// path of the offending field.
class ProblemFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a problem document:
///
///   {"sense": "minimize" | "maximize",
///    "objectives": [{"Q": [[lit, ...], ...], "c": [lit, ...]}, ...],
///    "constraints": [{"a": [lit, ...], "rel": "<=" | "=" | ">=", "b": lit}, ...],
///    "bounds": ["nonneg" | "free", ...]}
///
/// where every lit is a ban literal string. Missing bounds default to
/// nonneg; a missing sense defaults to minimize.
LexProblem parse_problem(std::string_view text);
LexProblem load_problem(const std::filesystem::path& path);

std::string problem_to_json(const LexProblem& p, int indent = 2);

/// Human-inspectable dump of an embedded problem.
std::string embedded_to_json(const EmbeddedProblem& e, int indent = 2);

}  // namespace naipm
