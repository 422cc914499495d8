#include "holoprec/upper_dyadic.hpp"

#include <cmath>

namespace holoprec {

void UpperDyadic::round_up() {
    if (m_ < 0) throw ConfigError("UpperDyadic mantissa must be nonnegative");
    if (m_ == 0) {
        e_ = 0;
        return;
    }
    std::int64_t bits = bit_length(m_);
    if (bits > kMantissaBits) {
        std::int64_t shift = bits - kMantissaBits;
        Int q;
        mpz_cdiv_q_2exp(q.get_mpz_t(), m_.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        m_ = std::move(q);
        e_ += shift;
    }
}

UpperDyadic UpperDyadic::from_fraction(const Int& num, const Int& den) {
    if (den <= 0) throw ConfigError("UpperDyadic fraction needs a positive denominator");
    if (num < 0) throw ConfigError("UpperDyadic fraction needs a nonnegative numerator");
    if (num == 0) return {};
    // scale so the quotient carries kMantissaBits significant bits
    std::int64_t shift = kMantissaBits + bit_length(den) - bit_length(num);
    if (shift < 0) shift = 0;
    Int scaled = num;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    return {std::move(q), -shift};
}

UpperDyadic UpperDyadic::from_rat(const Rat& q) {
    return from_fraction(q.get_num(), q.get_den());
}

UpperDyadic UpperDyadic::pow2(std::int64_t k) {
    UpperDyadic out;
    out.m_ = 1;
    out.e_ = k;
    return out;
}

UpperDyadic UpperDyadic::operator*(const UpperDyadic& o) const {
    return {m_ * o.m_, e_ + o.e_};
}

UpperDyadic UpperDyadic::operator+(const UpperDyadic& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const UpperDyadic& lo = e_ <= o.e_ ? *this : o;
    const UpperDyadic& hi = e_ <= o.e_ ? o : *this;
    std::int64_t gap = hi.e_ - lo.e_;
    if (gap > 4 * kMantissaBits) {
        // the small addend is below one ulp of the result: bump instead
        return {hi.m_ + 1, hi.e_};
    }
    Int shifted = hi.m_;
    mpz_mul_2exp(shifted.get_mpz_t(), shifted.get_mpz_t(), static_cast<mp_bitcnt_t>(gap));
    return {shifted + lo.m_, lo.e_};
}

bool UpperDyadic::operator<(const UpperDyadic& o) const {
    if (is_zero()) return !o.is_zero();
    if (o.is_zero()) return false;
    // compare m * 2^e against o.m * 2^o.e
    std::int64_t lg_lo = bit_length(m_) + e_;
    std::int64_t lg_hi = bit_length(o.m_) + o.e_;
    if (lg_lo != lg_hi) return lg_lo < lg_hi;
    Int a = m_, b = o.m_;
    if (e_ >= o.e_) {
        mpz_mul_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(e_ - o.e_));
    } else {
        mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(o.e_ - e_));
    }
    return a < b;
}

std::int64_t UpperDyadic::ceil_lg_pow(std::uint64_t k) const {
    if (is_zero()) throw ConfigError("ceil_lg of zero");
    if (k == 0) return 0;
    Int p;
    mpz_pow_ui(p.get_mpz_t(), m_.get_mpz_t(), static_cast<unsigned long>(k));
    return holoprec::ceil_lg(p) + static_cast<std::int64_t>(k) * e_;
}

std::int64_t UpperDyadic::ceil_lg() const { return ceil_lg_pow(1); }

Rat UpperDyadic::to_rat() const {
    if (is_zero()) return Rat(0);
    Rat out;
    if (e_ >= 0) {
        Int v = m_;
        mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(e_));
        out = Rat(v);
    } else {
        Int d(1);
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(-e_));
        out = Rat(m_, d);
    }
    out.canonicalize();
    return out;
}

double UpperDyadic::lg_approx() const {
    if (is_zero()) return 0.0;
    signed long exp2 = 0;
    double d = mpz_get_d_2exp(&exp2, m_.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp2) + static_cast<double>(e_);
}

}  // namespace holoprec
