// Exact balanced-tree products of the cleared step matrices:
// bin_split(a, b) = Bhat(b-1) * ... * Bhat(a), computed as
// P(a,b) = P(m,b) * P(a,m) with m = floor((a+b)/2), direct loop below a
// leaf threshold.  Dividing by the bottom-right corner recovers the exact
// rational P(a, b).
//
// The recursion keeps at most one finished child alive per level while its
// sibling is being computed.  Siblings are independent, so an OpenMP task
// variant is provided; it produces bit-identical matrices (exact integer
// arithmetic) and is only distinguishable through timing and ledger peaks.

#pragma once

#include <cstdint>

#include "holoprec/ledger.hpp"
#include "holoprec/ode.hpp"

namespace holoprec {

inline constexpr std::int64_t kDefaultLeafThreshold = 16;

struct ExactProduct {
    GiMatrix mat;
    std::int64_t lo = 0;  // product over [lo, hi)
    std::int64_t hi = 0;
    ledger::Registration tracked;

    ExactProduct() = default;
    ExactProduct(GiMatrix m, std::int64_t a, std::int64_t b)
        : mat(std::move(m)), lo(a), hi(b), tracked(mat.storage_bits()) {}

    const GaussianInt& corner() const { return mat.at(mat.dim() - 1, mat.dim() - 1); }
};

struct SplitOptions {
    std::int64_t threshold = kDefaultLeafThreshold;
    int threads = 1;  // > 1 enables the OpenMP task tree
};

ExactProduct bin_split(const Recurrence& rec, const EvalPoint& pt, std::int64_t a,
                       std::int64_t b, const SplitOptions& opts = {});

// Serial reference recursion (what the parallel variant must reproduce).
ExactProduct bin_split_serial(const Recurrence& rec, const EvalPoint& pt, std::int64_t a,
                              std::int64_t b, std::int64_t threshold = kDefaultLeafThreshold);

// P(a, b) = mat / corner, exact over Q(i); bottom-right entry becomes 1.
KMatrix reduce(const ExactProduct& prod);

// Current and peak tracked bits (zeros when instrumentation is off).
ledger::Probe ledger_probe();

}  // namespace holoprec
