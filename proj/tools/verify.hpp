#pragma once

#include <string>
#include <vector>

namespace twopoint::cli {

struct Check {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;  // measured <= bound
};

/// Invariant suite behind `twopoint verify`. Deterministic; a few seconds.
std::vector<Check> invariant_suite(unsigned threads);

/// {schema_version, pass, checks: [{name, measured, bound, pass}]}
std::string report_json(const std::vector<Check>& checks);

}  // namespace twopoint::cli
