// Low-precision arithmetic that only ever rounds up: values m * 2^e with a
// mantissa capped at a fixed width.  Every operation returns an upper bound
// on the exact result, which is all the norm-product bound M and the tail
// certificates need.  Exact conversions back to Q keep the certificates
// replayable in rational arithmetic.

#pragma once

#include <cstdint>

#include "holoprec/gaussian.hpp"

namespace holoprec {

class UpperDyadic {
public:
    static constexpr std::int64_t kMantissaBits = 96;

    UpperDyadic() = default;                       // value 0
    explicit UpperDyadic(long v) : m_(v), e_(0) { round_up(); }
    UpperDyadic(Int m, std::int64_t e) : m_(std::move(m)), e_(e) { round_up(); }

    // Smallest representable upper bound on num/den (num >= 0, den > 0).
    static UpperDyadic from_fraction(const Int& num, const Int& den);
    static UpperDyadic from_rat(const Rat& q);
    static UpperDyadic one() { return UpperDyadic(1); }
    // 2^k for any sign of k.
    static UpperDyadic pow2(std::int64_t k);

    bool is_zero() const { return m_ == 0; }

    UpperDyadic operator*(const UpperDyadic& o) const;
    UpperDyadic operator+(const UpperDyadic& o) const;
    bool operator<(const UpperDyadic& o) const;

    // Upper bound on this^k (k >= 0) with the mantissa kept exact; the
    // result is used for ceil_lg of M powers, so no re-rounding here.
    std::int64_t ceil_lg_pow(std::uint64_t k) const;

    // ceil(lg value); value must be positive.
    std::int64_t ceil_lg() const;

    Rat to_rat() const;
    double lg_approx() const;  // for reporting only

private:
    void round_up();
    Int m_;              // mantissa >= 0
    std::int64_t e_ = 0; // value = m * 2^e
};

}  // namespace holoprec
