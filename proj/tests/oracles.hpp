// Test-only oracles, kept independent of the matrix-product evaluation paths
// they are used to check: coefficient sequences come from unrolling the
// scalar recurrence directly, sums from plain term-by-term accumulation, and
// operator checks from symbolic substitution of a truncated series.

#pragma once

#include <cstdint>
#include <vector>

#include "holoprec/ode.hpp"

namespace holoprec::testing {

// y_0 .. y_{count-1} from b_0(n) y_{n+r} = -(b_1(n) y_{n+r-1} + ...),
// starting from y_k = l_k / k!.
inline std::vector<GaussianRational> oracle_coefficients(
    const Recurrence& rec, const std::vector<GaussianRational>& inits, std::int64_t count) {
    std::vector<GaussianRational> y(static_cast<std::size_t>(count), GaussianRational(0));
    Int fact(1);
    for (std::size_t k = 0; k < rec.order && static_cast<std::int64_t>(k) < count; ++k) {
        if (k > 0) fact *= static_cast<long>(k);
        y[k] = GaussianRational(inits[k].num, inits[k].den * fact).normalized();
    }
    for (std::int64_t n = 0; n + static_cast<std::int64_t>(rec.order) < count; ++n) {
        GaussianRational rhs(0);
        for (std::size_t j = 1; j <= rec.degree; ++j) {
            std::int64_t idx = n + static_cast<std::int64_t>(rec.order) -
                               static_cast<std::int64_t>(j);
            if (idx < 0) continue;
            GaussianInt bj = rec.b[j].eval(Int(n));
            if (bj.is_zero()) continue;
            rhs = (rhs + GaussianRational(bj, Int(1)) * y[static_cast<std::size_t>(idx)])
                      .normalized();
        }
        GaussianInt b0 = rec.b[0].eval(Int(n));
        if (b0.is_zero()) throw SingularRecurrenceError(n);
        y[static_cast<std::size_t>(n + static_cast<std::int64_t>(rec.order))] =
            (-rhs / GaussianRational(b0, Int(1))).normalized();
    }
    return y;
}

// S_N = sum_{n<N} y_n zeta^n by direct accumulation.
inline GaussianRational oracle_sum(const std::vector<GaussianRational>& y,
                                   const GaussianRational& zeta, std::int64_t n_terms) {
    GaussianRational acc(0), zp(1);
    for (std::int64_t n = 0; n < n_terms; ++n) {
        acc = (acc + y[static_cast<std::size_t>(n)] * zp).normalized();
        zp = (zp * zeta).normalized();
    }
    return acc;
}

// Coefficients of (sum_k a_k(z) th^k) applied to sum_n series[n] z^n,
// valid up to index series.size() - 1 (theta does not shift degrees).
inline std::vector<GaussianRational> apply_theta_operator(
    const ThetaODE& ode, const std::vector<GaussianRational>& series) {
    std::vector<GaussianRational> out(series.size(), GaussianRational(0));
    for (std::size_t k = 0; k <= ode.order; ++k) {
        const GiPoly& a = ode.coeffs[k];
        if (a.is_zero()) continue;
        // theta^k scales coefficient n by n^k
        std::vector<GaussianRational> scaled(series.size(), GaussianRational(0));
        for (std::size_t n = 0; n < series.size(); ++n) {
            Int nk(1);
            for (std::size_t t = 0; t < k; ++t) nk *= static_cast<long>(n);
            scaled[n] = (nk * series[n]).normalized();
        }
        for (std::size_t j = 0;
             j <= static_cast<std::size_t>(std::max<std::int64_t>(a.degree(), 0)); ++j) {
            const GaussianInt& c = a.coeff(j);
            if (c.is_zero()) continue;
            for (std::size_t n = 0; n + j < series.size(); ++n) {
                out[n + j] =
                    (out[n + j] + GaussianRational(c * scaled[n].num, scaled[n].den))
                        .normalized();
            }
        }
    }
    return out;
}

// Small deterministic generator for reproducible random instances.
struct TestRng {
    std::uint64_t state;
    explicit TestRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
        return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

struct RandomInstance {
    ThetaODE ode;
    std::vector<GaussianRational> inits;
    GaussianRational point;
};

// Deterministic corpus of ordinary-point operators built in d/dz form
// (so b_0(n) = c_r(0) (n+r)...(n+1) never vanishes), with r <= 3,
// padded degree <= 4, coefficient bit size <= 8, and |zeta| <= L/2 for the
// conservative radius bound L.
inline std::vector<RandomInstance> random_corpus(std::size_t count, std::uint64_t seed = 42) {
    TestRng rng(seed);
    std::vector<RandomInstance> out;
    while (out.size() < count) {
        std::size_t r = static_cast<std::size_t>(rng.range(1, 3));
        bool complex_coeffs = rng.range(0, 3) == 0;
        std::vector<GiPoly> dz(r + 1);
        for (std::size_t k = 0; k <= r; ++k) {
            std::size_t deg = static_cast<std::size_t>(rng.range(0, 2));
            std::vector<GaussianInt> cs(deg + 1);
            for (auto& c : cs) {
                c.re = static_cast<long>(rng.range(-5, 5));
                c.im = complex_coeffs ? static_cast<long>(rng.range(-2, 2)) : 0;
            }
            dz[k] = GiPoly(std::move(cs));
        }
        // force an ordinary point at 0
        {
            std::vector<GaussianInt> cs(dz[r].coeffs());
            if (cs.empty()) cs.emplace_back();
            if (cs[0].is_zero()) cs[0] = GaussianInt(static_cast<long>(rng.range(1, 4)));
            dz[r] = GiPoly(std::move(cs));
        }
        ThetaODE ode;
        try {
            ode = theta_from_dz(dz);
        } catch (const NotOrdinaryError&) {
            continue;
        }
        if (ode.degree > 4 || ode.h1 > 8) continue;
        RandomInstance inst;
        inst.ode = std::move(ode);
        for (std::size_t k = 0; k < r; ++k) {
            inst.inits.emplace_back(Rat(rng.range(-3, 3), rng.range(1, 3)), Rat(0));
        }
        bool some_nonzero = false;
        for (const auto& l : inst.inits) some_nonzero = some_nonzero || !l.is_zero();
        if (!some_nonzero) inst.inits[0] = GaussianRational(1);
        RadiusBound rb = radius_lower_bound(inst.ode);
        Rat half = rb.finite ? rb.lower / 2 : Rat(1, 2);
        if (rng.range(0, 3) == 0) {
            // complex point on the diagonal: |(1+i) h/2| = h/sqrt(2) < h
            inst.point = GaussianRational(half / 2, half / 2);
        } else {
            inst.point = GaussianRational(half, Rat(0));
        }
        out.push_back(std::move(inst));
    }
    return out;
}

}  // namespace holoprec::testing
