#pragma once

#include <string>
#include <vector>

namespace schamel::verify {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;  // empty on pass, diagnostic on failure
};

// The invariant suite of every module. Quick mode shrinks grids and horizons
// but runs every named check.
std::vector<CheckResult> run_all(bool quick);

}  // namespace schamel::verify
