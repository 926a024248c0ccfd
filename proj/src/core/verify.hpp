#pragma once

#include <map>
#include <string>
#include <vector>

namespace cnb {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;   // the quantity the check bounds
    double threshold = 0;  // the bound it is held to
    std::string detail;
};

struct VerifyOptions {
    std::map<std::string, double> tolerance_overrides; // by check name
    unsigned seed = 12345;
};

// Names of every available check, in report order.
std::vector<std::string> verify_check_names();

// The acceptance subset (criteria 1..11), in order.
std::vector<std::string> acceptance_check_names();

// Runs the named checks; unknown names throw. An empty list yields no results.
std::vector<CheckResult> run_checks(const std::vector<std::string>& names,
                                    const VerifyOptions& opts);

} // namespace cnb
