// The linear-space product accumulation: the full product P(0, N) is split
// into Delta chunks, each chunk is computed exactly by bin_split, divided by
// its corner and truncated, then multiplied into a single accumulator that
// is re-truncated after every step.  Tolerances follow
//
//   Qt       : Trunc(corner^-1 * Qhat, (1/2D) M^(-D+1) eps)
//   Pt^(q+1) : Trunc(Qt * Pt^(q),      (1/2D) M^(-D+q+1) eps)
//
// with M an upper bound on every chunk norm plus eps, which yields
// ||Pt^(q) - P^(q)||_1 <= (q/D) eps / M^(D-q) along the loop and
// ||Pt - P(0,N)||_1 <= eps = 2^-p at the end.  Truncated entries stay
// below lg(1/eps) + D lg M + lg D + O(1) bits; a runtime cap assertion
// (slack 64 bits) guards that.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "holoprec/bounds.hpp"
#include "holoprec/matrix.hpp"
#include "holoprec/product_tree.hpp"
#include "holoprec/upper_dyadic.hpp"

namespace holoprec {

// Matrix truncation at tolerance eps with the per-entry factor beta = 2k:
// || Trunc(A, eps) - A ||_1 <= eps.
DyadicMatrix trunc_matrix(const KMatrix& a, const Rat& eps);

// Chunk boundary floor(q * N / delta).
std::int64_t chunk_boundary(std::int64_t n, std::int64_t delta, std::int64_t q);

// Delta = max(1, min(N, ceil((N/p) * (h + r lg N)))).
std::int64_t default_chunk_count(std::int64_t n, std::int64_t p, std::int64_t h,
                                 std::int64_t order);

// Upper bound M with max_q ||P(chunk_q)||_1 + 2^-p <= M, computed from the
// per-factor bound 1 + |zeta| + |zeta| max_k |b_k(n)/b_0(n)| in upward-rounded
// low-precision arithmetic; an optional norm refinement tightens long chunks
// (the minimum of the two valid bounds is used).
UpperDyadic bound_M(const Recurrence& rec, const EvalPoint& pt, std::int64_t n,
                    std::int64_t delta, std::int64_t p,
                    const NormRefinement* refinement = nullptr, int threads = 1);

struct TruncIterRecord {
    std::int64_t q = 0;
    std::int64_t chunk_lo = 0;
    std::int64_t chunk_hi = 0;
    std::int64_t chunk_bits = 0;
    std::int64_t accumulator_bits = 0;
    std::int64_t ledger_peak_bits = 0;
    DyadicMatrix accumulator;  // filled only when collect_iterates is set
};

struct TruncOptions {
    std::int64_t threshold = kDefaultLeafThreshold;
    std::int64_t delta_override = 0;  // 0: use default_chunk_count
    int threads = 1;
    bool collect_iterates = false;
    const NormRefinement* refinement = nullptr;
    std::function<void(const TruncIterRecord&)> on_iteration;
};

struct TruncStats {
    std::int64_t n = 0;
    std::int64_t delta = 0;
    Rat m_value;                       // exact value of the bound M used
    double lg_m = 0.0;
    double lg_m_per_chunk = 0.0;       // achieved lg M / (N / Delta)
    std::int64_t cap_bits = 0;         // runtime entry-size cap
    std::int64_t max_entry_bits = 0;   // observed maximum over the run
    std::int64_t ledger_peak_bits = 0;
};

struct TruncResult {
    DyadicMatrix p_tilde;
    TruncStats stats;
};

// ||p_tilde - P(0, N)||_1 <= 2^-p.
TruncResult trunc_bin_split(const Recurrence& rec, const EvalPoint& pt, std::int64_t n,
                            std::int64_t p, const TruncOptions& opts = {});

}  // namespace holoprec
