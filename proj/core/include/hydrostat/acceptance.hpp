#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hydrostat {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double time_limit = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 1;
    int threads = 1;
    std::vector<int> only;  ///< empty runs all ten
};

/// "criterion N PASS|FAIL name: detail [s, limit]"
std::string format_result(const CriterionResult& r);

/// Runs the acceptance criteria and prints one
/// "criterion N PASS|FAIL name: detail" line per criterion as it finishes.
/// An exception inside a criterion marks it FAIL with the message.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& out);

}  // namespace hydrostat
