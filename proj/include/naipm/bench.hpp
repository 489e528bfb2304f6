#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace naipm {

struct BenchRow {
  std::string name;
  std::string status;  // solver status, or "inverse" for the matrix cases
  int iterations = 0;
  std::vector<std::string> deltas;  // empty when every expectation holds

  bool passed() const { return deltas.empty(); }
};

/// Runs the cases of an expectations document. Problem paths inside it are
/// resolved relative to the document. Throws std::invalid_argument when
/// `only` names no case.
std::vector<BenchRow> run_bench(const std::filesystem::path& expectations,
                                const std::optional<std::string>& only = std::nullopt);

std::string format_bench(const std::vector<BenchRow>& rows);

}  // namespace naipm
