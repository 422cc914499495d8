// Certified truncation orders.  A TailCertificate wraps a geometric-decay
// argument for the recurrence states: with u_n = (y_{n+r-s~} z^n, ...,
// y_{n+r-1} z^n) and w_n = Pi^-1 u_n, once
//
//   || Pi^-1 (zeta C(n)) Pi ||_1 <= q < 1   for all n >= n1,
//
// the transformed states contract, so sum_{n>=N} |y_n zeta^n| <=
// headroom * q^(N-n1) / (1-q), where headroom folds the certified state-norm
// bound at n1 together with ||Pi||_1 and the max(1,|zeta|)^(r-1) * q^-(r-1)
// propagation constants.  Both inequalities are checked in exact rational
// arithmetic: the first one by shifting the numerator/denominator bound
// polynomials to n1 and inspecting coefficient signs, the second one
// directly.  Floating point appears only as an untrusted eigenvector hint
// for the transform candidates.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "holoprec/matrix.hpp"
#include "holoprec/ode.hpp"

namespace holoprec {

struct TailCertificate {
    std::int64_t tail_order = 0;  // N
    std::int64_t n1 = 0;
    Rat q;                   // contraction factor, in (0,1) when certified
    KMatrix transform;       // Pi; dim() == 0 means identity
    Rat headroom;            // H
    bool certified = false;  // false: heuristic fallback, fields above unused
};

struct BoundsOptions {
    bool heuristic = false;        // skip certification entirely
    std::int64_t max_n1 = 8192;    // budget for the contraction onset search
    bool recheck = true;           // re-verify the certificate before returning
    // Heuristic probe: an approximation of S_N good to a small fraction of
    // eps.  Defaults to exact partial summation when absent.
    std::function<GaussianRational(std::int64_t)> partial_sum_probe;
};

// Certified N with sum_{n>=N} |y_n zeta^n| <= eps, or a heuristic
// (uncertified) N when certification fails or is disabled.  Throws
// UnsupportedInstanceError only if the heuristic probe also fails to settle.
TailCertificate truncation_order(const Recurrence& rec, const EvalPoint& pt,
                                 const InitialVector& inits, const Rat& eps,
                                 const BoundsOptions& opts = {});

// Transform with the smallest certified contraction factor found.
struct NormTransform {
    KMatrix pi;  // dim() == 0 means identity
    Rat q;
    std::int64_t n1 = 0;
};
NormTransform opt_norm_transform(const Recurrence& rec, const EvalPoint& pt,
                                 std::int64_t max_n1 = 8192);

// Replays every certificate inequality in exact rational arithmetic.
bool verify_certificate(const TailCertificate& cert, const Recurrence& rec,
                        const EvalPoint& pt, const InitialVector& inits, const Rat& eps);

std::string certificate_to_json(const TailCertificate& cert);

// Full-size transform for tightening the product-norm bound M: a valid
// upper bound on ||P(a,b)||_1 is kappa * prod_n colsum_ub(Pi^-1 B(n) Pi).
struct NormRefinement {
    KMatrix pi;      // (s~+1) x (s~+1)
    KMatrix pi_inv;
    Rat kappa;       // >= ||Pi||_1 * ||Pi^-1||_1
};
std::optional<NormRefinement> make_norm_refinement(const Recurrence& rec,
                                                   const EvalPoint& pt);

// Exact coefficient sequence y_0 .. y_{count-1} by unrolling the recurrence.
std::vector<GaussianRational> unroll_coefficients(const Recurrence& rec,
                                                  const InitialVector& inits,
                                                  std::int64_t count);

// Exact S_N = sum_{n<N} y_n zeta^n.
GaussianRational exact_partial_sum(const Recurrence& rec, const EvalPoint& pt,
                                   const InitialVector& inits, std::int64_t N);

}  // namespace holoprec
