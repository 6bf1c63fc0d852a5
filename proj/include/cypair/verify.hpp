#pragma once

#include <json.hpp>

#include <string>
#include <vector>

// The twelve acceptance checks, each pinned to its tolerance and runtime
// budget; the acceptance binary and the verify CLI subcommand both run this
// list.
namespace cypair::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured values against their bounds
    double seconds = 0.0;
};

std::vector<CheckResult> run_all_checks();

nlohmann::json to_json(const CheckResult& r);
nlohmann::json to_json(const std::vector<CheckResult>& rs);

}  // namespace cypair::verify
