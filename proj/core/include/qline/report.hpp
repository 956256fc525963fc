#pragma once

#include <string>
#include <vector>

namespace qline {

struct CheckReport {
  std::string name;
  bool pass = false;
  std::string detail;    // human-readable values (constants, sides)
  std::string residual;  // canonical form of lhs - rhs when failing, "0" otherwise
};

inline bool all_pass(const std::vector<CheckReport>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

}  // namespace qline
