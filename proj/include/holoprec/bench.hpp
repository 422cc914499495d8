// Benchmark harness: runs catalog problems across precisions in both modes,
// records deterministic ledger peaks next to wall times, cross-checks the
// two modes against each other before emitting anything, and fits
// lg(peak) ~ exponent * lg(p) to expose the space-scaling contrast.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holoprec/evaluator.hpp"

namespace holoprec {

struct BenchRecord {
    std::string problem;
    std::string mode;
    std::int64_t p = 0;
    std::int64_t n = 0;
    std::int64_t delta = 0;
    double lg_m = 0.0;
    std::int64_t wall_ns = 0;
    std::int64_t peak_bits = 0;
    std::string digest;
    std::int64_t rss_max_kb = -1;  // advisory; only emitted when requested

    bool operator==(const BenchRecord& o) const;
};

struct BenchOptions {
    std::int64_t threshold = kDefaultLeafThreshold;
    bool heuristic_bounds = false;
    bool with_rss = false;
    // test hook: corrupt results before the cross-mode check
    std::function<void(EvalResult&)> tamper;
};

// One record per (mode, p), strictly sequential.  When both modes run for a
// given p, their values must agree to 2^(1-p) or the run aborts.
std::vector<BenchRecord> run_series(const std::string& problem,
                                    const std::vector<EvalMode>& modes,
                                    const std::vector<std::int64_t>& p_list,
                                    const BenchOptions& opts = {});

struct FitResult {
    double exponent = 0.0;
    double r2 = 0.0;
};

// Least-squares fit of lg(peak_bits) against lg(p) per mode; requires at
// least 4 records per mode.
std::map<std::string, FitResult> fit_scaling(const std::vector<BenchRecord>& records);

std::string records_to_csv(const std::vector<BenchRecord>& records, bool with_rss = false);
std::vector<BenchRecord> records_from_csv(const std::string& csv);
std::string records_to_json(const std::vector<BenchRecord>& records, bool with_rss = false);

}  // namespace holoprec
