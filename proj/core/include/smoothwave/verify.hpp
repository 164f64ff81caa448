#pragma once

#include <string>
#include <vector>

#include "smoothwave/registry.hpp"
#include "smoothwave/smooth_core.hpp"

namespace smoothwave {

enum class SuiteMode { Fast, Full };

struct SuiteResult {
    std::string id;
    bool pass = false;
    std::string csv_path;
    std::string note;
};

// Runs every invariant suite for the mode, writes one CSV of records per
// suite into out_dir, and returns per-suite pass/fail. Enforces first that
// every calibrated inequality id has a registry entry.
std::vector<SuiteResult> run_verify(SuiteMode mode, const CalibrationRegistry& reg,
                                    const std::string& out_dir, uint64_t seed);

// Trial-division smoothness check, kept independent of the divide-out sieve
// so the sieve-oracle suite (and its tampering negative control) means
// something. Exposed for reuse by the negative-control test.
bool verify_sieve_against_oracle(const SmoothSet& set);

}  // namespace smoothwave
