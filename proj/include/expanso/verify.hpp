// Runnable property suite: each catalogued result about expansiveness variants
// becomes a check over catalog systems, reported as pass, fail or
// hypothesis-not-met with a reproducible witness.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace expanso {

struct SuiteParams {
    std::uint64_t seed = 20260810;
    int workers = 0;
    std::string only;                 // run a single check id, e.g. "T3.10"
    std::string inject_bug;           // harness self-test hook: flip this check's verdict
    std::vector<std::string> entries; // catalog subset; empty = the full catalog
};

struct CheckResult {
    std::string id;
    std::string title;
    std::string status; // pass | fail | hypothesis-not-met
    int instances = 0;  // (system, parameter) pairs actually exercised
    std::string witness;
};

std::vector<CheckResult> run_suite(const SuiteParams& params = {});

// Known check ids in registry order.
std::vector<std::string> suite_check_ids();

bool suite_ok(const std::vector<CheckResult>& results);
std::string suite_to_json(const std::vector<CheckResult>& results);
std::string suite_table(const std::vector<CheckResult>& results);

} // namespace expanso
