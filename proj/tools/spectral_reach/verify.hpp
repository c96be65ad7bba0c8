#pragma once

#include <string>
#include <vector>

namespace spectral_reach::cli {

struct CheckResult {
  std::string suite;
  std::string graph;
  std::string check;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};

inline const std::vector<std::string> kSuites{"graph", "spectral", "commute", "mds", "truncation", "all"};

/// Graph zoo: the bundled k2, p3, c4, tworoom and fourroom maps.
std::vector<CheckResult> run_suite(const std::string& suite);

/// One JSON object per line.
std::string results_to_jsonl(const std::vector<CheckResult>& results);

}  // namespace spectral_reach::cli
