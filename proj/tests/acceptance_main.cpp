// Acceptance suite: runs every verification criterion at its pinned
// generation and tolerance (exact equality throughout) and prints one
// pass/fail line per criterion.

#include <cstdio>

#include "gasket/acceptance.hpp"

int main() {
    gasket::AcceptanceOptions options;
    options.max_generation = 6;
    options.seed = 2024;
    options.detection_sample_budget = 100000;

    auto results = gasket::run_acceptance(options);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("%s criterion %2d (%s): %s [%.2fs]\n",
                    r.pass ? (r.skipped ? "SKIP" : "PASS") : "FAIL", r.number, r.name.c_str(),
                    r.detail.c_str(), r.seconds);
    }
    std::printf("%s\n", all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all_pass ? 0 : 1;
}
