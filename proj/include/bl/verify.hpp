#pragma once

#include <string>
#include <vector>

#include "bl/model.hpp"

namespace bl {

struct CheckResult {
  std::string name;
  bool pass = false;
  long cases = 0;
  std::string detail;  // first failure context, empty when passing
};

/// All canonical params with n1 + n2 <= max_n (n1, n2 >= 1, 1 <= nw <= min).
std::vector<ModelParams> enumerate_canonical(int max_n);

/// Runs every exact structural invariant (plus the float-tolerance checks of
/// the symmetrized system) over all canonical models with n <= max_n.
/// Each named check aggregates its cases; a failure records the first
/// offending context.
std::vector<CheckResult> run_verification(int max_n);

}  // namespace bl
