#pragma once

#include <string>
#include <vector>

namespace jcpost {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool passed = false;
    std::string detail;  // measured values and the bounds they were held to
};

struct VerificationReport {
    std::vector<CriterionResult> results;

    bool all_passed() const {
        for (const auto& r : results)
            if (!r.passed) return false;
        return true;
    }
};

// Run the full verification suite. Emits deterministic data files (two
// independent runs, byte-compared by the determinism check) plus a results
// table under out_dir.
VerificationReport run_verification(const std::string& out_dir);

// One line per criterion: "PASS  3  name -- detail".
std::string format_report(const VerificationReport& report);

}  // namespace jcpost
