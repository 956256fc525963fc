#pragma once

#include "qline/algebra.hpp"
#include "qline/report.hpp"
#include "qline/repspace.hpp"

#include <string>
#include <vector>

namespace qline {

// Named identity suites: every relation from relation_names() plus the grouped checks below.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Runs one suite ("all" runs every suite in order). Numerical suites use the given window.
// Throws std::invalid_argument for unknown names.
std::vector<CheckReport> run_suite(const std::string& name, const Params& p, const Window& w);

// Deterministic polynomial samples in x with rational coefficients, used by the continuity suites.
std::vector<AlgebraElement> sample_polynomials(int count, unsigned seed);

}  // namespace qline
