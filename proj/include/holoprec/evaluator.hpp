// Top-level evaluation: given the operator, initial values, point and target
// precision p, produce a complex dyadic within 2^-p of y(zeta).  The error
// budget is split into powers of two: 2^-(p+2) for the series tail, 2^-(p+2)
// for the matrix approximation (scaled by the initial-vector norm), and the
// remainder absorbs the final componentwise rounding at 2^-(p+2).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "holoprec/bounds.hpp"
#include "holoprec/ode.hpp"
#include "holoprec/trunc_engine.hpp"

namespace holoprec {

enum class EvalMode { classic, trunc };

const char* to_string(EvalMode mode);

struct EvalOptions {
    EvalMode mode = EvalMode::trunc;
    std::int64_t threshold = kDefaultLeafThreshold;
    std::int64_t delta_override = 0;
    bool heuristic_bounds = false;
    bool assume_in_disk = false;
    bool refine_bound = false;
    int threads = 1;
    bool collect_trace = false;
};

struct EvalRequest {
    ThetaODE ode;
    std::vector<GaussianRational> inits;
    GaussianRational point;
    std::int64_t p = 64;
    EvalOptions options;
};

struct EvalResult {
    DyadicComplex value;
    Dyadic error_bound;       // <= 2^-p
    bool certified = false;
    std::int64_t n = 0;       // truncation order used
    std::int64_t delta = 0;   // 0 in classic mode
    double lg_m = 0.0;
    double lg_m_per_chunk = 0.0;
    std::int64_t ledger_peak_bits = 0;
    std::int64_t ledger_current_bits = 0;
    std::int64_t wall_ns = 0;
    EvalMode mode = EvalMode::trunc;
    std::int64_t p = 0;
    bool assumed_in_disk = false;  // the override was needed and recorded
    TailCertificate certificate;
    std::vector<TruncIterRecord> trace;

    // FNV-1a over the canonical value serialization (wall time excluded).
    std::string digest() const;
};

EvalResult evaluate(const EvalRequest& req);

struct CompareRecord {
    EvalResult classic;
    EvalResult trunc;
    Rat difference_upper;  // certified bound on |value_classic - value_trunc|
};

// Runs both modes and fails hard if they disagree beyond 2^(1-p).
CompareRecord evaluate_both_and_compare(const EvalRequest& req);

}  // namespace holoprec
