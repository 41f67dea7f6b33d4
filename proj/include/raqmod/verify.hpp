#pragma once

#include "raqmod/json_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace raqmod {

struct Check {
    std::string id;
    bool passed = false;
    bool exact = true;       // exact series identity, or numeric comparison
    double measured = 0.0;   // exact: number of differing terms; numeric: residual
    double threshold = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;
    bool passed() const;
};

// Negative values select the suite's own default.
struct VerifyOptions {
    int order = -1;
    int cutoff = -1;
    double tolerance = -1.0;
    int jobs = 1;
    int samples = 100;  // random inputs per property
    std::uint64_t seed = 20240607;
};

const std::vector<std::string>& suite_names();
// Raises InputError for an unknown suite.
VerifyReport run_suite(const std::string& name, const VerifyOptions& opts);

json report_to_json(const VerifyReport& r);

} // namespace raqmod
