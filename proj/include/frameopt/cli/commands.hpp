#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "frameopt/cli/document.hpp"
#include "frameopt/dualspace.hpp"

namespace frameopt::cli {

/// Entry point shared by the `frameopt` binary and the tests.
/// Exit codes: 0 success, 1 invalid input, 2 numerical failure,
/// non-convergence or a failed reproduction check.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Report builders. Each returns the --json document; the text output is
// rendered from the same object.
nlohmann::json analyze_report(const Problem& problem);
nlohmann::json optimal_report(const Problem& problem, double tol, std::size_t budget);
nlohmann::json family_report(const Problem& problem, FamilyKind mode);
nlohmann::json weights_report(const std::vector<double>& probs, std::size_t dim);
nlohmann::json reproduce_report(const std::string& id);

}  // namespace frameopt::cli
