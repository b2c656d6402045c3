#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gasket {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    /// Criteria whose pinned generations exceed the cap are skipped.
    int max_generation = 6;
    std::uint64_t seed = 2024;
    int threads = 1;
    long long detection_sample_budget = 100000;
};

/// Runs every verification criterion and returns one result per criterion.
/// Each criterion's tolerances are exact (equality in the scalar ring) and
/// its runtime budget is enforced.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

} // namespace gasket
