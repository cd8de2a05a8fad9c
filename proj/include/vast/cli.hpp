#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace vast {

/// Exit codes of vastctl.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Largest group order for exhaustive subset sweeps (2^12 subsets per group).
inline constexpr std::size_t kMaxSweepOrder = 12;

struct PropCheck {
  std::string name;
  std::size_t groups = 0;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// Exhaustive checks of the finite-group claims over the catalog of groups
/// of order <= order_bound.  Throws Error(precondition_violated) past
/// kMaxSweepOrder.
std::vector<PropCheck> run_prop_suite(std::size_t order_bound);

/// Entry point shared by vastctl and the tests; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vast
