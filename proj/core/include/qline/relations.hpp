#pragma once

#include "qline/algebra.hpp"
#include "qline/report.hpp"

#include <string>
#include <vector>

namespace qline {

// Names accepted by verify_relation, in catalog order.
const std::vector<std::string>& relation_names();

// Exact check of one catalogued identity; throws std::invalid_argument for unknown names.
CheckReport verify_relation(const Algebra& alg, const std::string& name);

}  // namespace qline
