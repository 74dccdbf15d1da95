#pragma once

#include <string>
#include <vector>

#include "lamq/quiver.hpp"

namespace lamq {

struct RunConfig {
    std::string field_spec = "Q";
    std::string q_literal = "2";
    int depth = 6;
    unsigned long long budget = 1'000'000;
    std::vector<std::string> grid_override;  // point literals "a,b,c"
};

struct CheckResult {
    std::string id;
    std::string status;  // "pass" | "fail" | "undecided"
    std::string details;
    std::string repro;   // command line reproducing the check
    bool passed() const { return status == "pass"; }
};

struct VerifyReport {
    RunConfig config;
    std::vector<CheckResult> checks;
    int passed = 0, failed = 0, undecided = 0;
    std::string to_json_text() const;
    std::string to_text() const;
};

/* Runs the full verification suite for one configuration.  Check ids are
 * stable; the acceptance binary maps them onto its criteria. */
VerifyReport run_verify(const RunConfig& cfg);

// the standard configuration matrix exercised by the acceptance suite
std::vector<RunConfig> standard_configs();

}  // namespace lamq
