#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace steklov {

struct CriterionResult {
  int id{0};
  std::string name;
  bool pass{false};
  bool soft{false};  // not-passed because an explicit truncation override
                     // pushed a verdict to "undecided"
  std::string detail;
  double seconds{0.0};
};

struct AcceptanceOptions {
  std::size_t truncation_override{0};  // 0 = the tolerances and depths as specified
};

/// Runs every acceptance criterion at its stated tolerance.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// One line per criterion; returns the process exit code (0 iff all pass).
int report_acceptance(const std::vector<CriterionResult>& results, std::FILE* out);

}  // namespace steklov
