// Exact arithmetic over Z[i], Q(i) and complex dyadics, together with the
// fixed-point truncation operator Trunc(a, eps) = sgn(a) * floor(2^e |a|) * 2^-e
// (e = ceil(lg 1/eps)) and the bit-size measure used throughout the library.
//
// GaussianRational values are deliberately NOT kept in lowest terms: reducing
// intermediate fractions during product-tree work is too expensive.  Call
// normalized() for display or final output.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "holoprec/errors.hpp"

namespace holoprec {

using Int = mpz_class;
using Rat = mpq_class;

// ceil(lg n) for n >= 1, with ceil(lg 0) := 0 so the measure is total.
std::int64_t ceil_lg(const Int& n);
std::int64_t ceil_lg_ui(std::uint64_t n);

// ceil(lg(num/den)) for num, den > 0.
std::int64_t ceil_lg_fraction(const Int& num, const Int& den);

// Number of bits of |n| (0 for n = 0).
std::int64_t bit_length(const Int& n);

struct GaussianInt {
    Int re;
    Int im;

    GaussianInt() = default;
    GaussianInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianInt(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianInt conj() const { return {re, -im}; }
    Int norm() const { return re * re + im * im; }  // |.|^2, exact

    GaussianInt operator-() const { return {-re, -im}; }
    GaussianInt operator+(const GaussianInt& o) const { return {re + o.re, im + o.im}; }
    GaussianInt operator-(const GaussianInt& o) const { return {re - o.re, im - o.im}; }
    GaussianInt operator*(const GaussianInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianInt& operator+=(const GaussianInt& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianInt& operator*=(const GaussianInt& o) {
        *this = *this * o;
        return *this;
    }
    bool operator==(const GaussianInt& o) const { return re == o.re && im == o.im; }

    // Exact quotient; throws ConfigError if o does not divide *this in Z[i].
    GaussianInt divexact(const GaussianInt& o) const;

    // Bits held by the two components (ledger accounting).
    std::int64_t storage_bits() const { return bit_length(re) + bit_length(im); }
};

GaussianInt operator*(const Int& a, const GaussianInt& b);

// Rational upper bound on |g|: isqrt-based, exact when |g|^2 is a square,
// otherwise off by at most one.
Int modulus_ub(const GaussianInt& g);
// Rational lower bound on |g|: norm(g)/(|re|+|im|) >= |g|/sqrt(2).
Rat modulus_lb(const GaussianInt& g);

// Element of Q(i) stored as Gaussian-integer numerator over a positive
// integer denominator.  Not canonicalized (see file comment).
struct GaussianRational {
    GaussianInt num;
    Int den{1};

    GaussianRational() = default;
    GaussianRational(GaussianInt n, Int d);
    explicit GaussianRational(long v) : num(v), den(1) {}
    GaussianRational(const Rat& re, const Rat& im);

    bool is_zero() const { return num.is_zero(); }
    bool is_real() const { return num.im == 0; }

    Rat real() const { return canonical(Rat(num.re, den)); }
    Rat imag() const { return canonical(Rat(num.im, den)); }

    GaussianRational operator-() const { return {-num, den}; }
    GaussianRational operator+(const GaussianRational& o) const;
    GaussianRational operator-(const GaussianRational& o) const;
    GaussianRational operator*(const GaussianRational& o) const;
    GaussianRational operator/(const GaussianRational& o) const;  // field division
    bool operator==(const GaussianRational& o) const;             // value equality

    // Lowest terms with gcd(re, im, den) removed; den stays positive.
    GaussianRational normalized() const;

    // |.|^2 as an exact rational.
    Rat norm() const;

    // Rational upper/lower bounds on the modulus.
    Rat modulus_upper() const;
    Rat modulus_lower() const;

    static Rat canonical(Rat q) {
        q.canonicalize();
        return q;
    }
};

GaussianRational operator*(const Int& a, const GaussianRational& b);

// Bit size of (x + iy)/w: ceil(lg w) + ceil(lg |x|) + ceil(lg |y|) + 1.
std::int64_t bit_size(const GaussianRational& x);
std::int64_t bit_size(const GaussianInt& x);

// Exact binary fixed-point number m * 2^-e with e >= 0.
struct Dyadic {
    Int mantissa;
    std::int64_t exponent = 0;  // value = mantissa * 2^-exponent

    Dyadic() = default;
    Dyadic(Int m, std::int64_t e);

    bool is_zero() const { return mantissa == 0; }
    Rat to_rational() const;

    Dyadic operator-() const { return {-mantissa, exponent}; }
    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const;  // value equality

    // Remove trailing zero bits (value unchanged).
    Dyadic normalized() const;

    std::string to_string() const;                 // "m*2^-e"
    std::string to_decimal(std::size_t digits) const;  // truncated decimal expansion

    std::int64_t storage_bits() const { return bit_length(mantissa); }
};

struct DyadicComplex {
    Dyadic re;
    Dyadic im;

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    GaussianRational to_gaussian_rational() const;
    bool operator==(const DyadicComplex& o) const { return re == o.re && im == o.im; }

    std::string to_string() const;
    std::int64_t storage_bits() const { return re.storage_bits() + im.storage_bits(); }
};

// e = ceil(lg 1/eps); throws InvalidToleranceError unless 0 < eps < 1.
std::int64_t trunc_exponent(const Rat& eps);

// Trunc at an explicit exponent: sgn(a) * floor(2^e |a|) * 2^-e.
Dyadic trunc_scalar_at(const Rat& a, std::int64_t e);
// Same, for a quotient num/den with den > 0 (avoids materializing a Rat).
Dyadic trunc_quotient_at(const Int& num, const Int& den, std::int64_t e);

Dyadic trunc_scalar(const Rat& a, const Rat& eps);
DyadicComplex trunc_gaussian(const GaussianRational& a, const Rat& eps);

// String formats: Gaussian rationals parse/print as "a/b+c/d*i" with optional
// parts ("3", "-1/3", "i", "1/2-2/3*i", ...).
GaussianRational parse_gaussian_rational(const std::string& text);
std::string to_string(const GaussianRational& x);
std::string to_string(const GaussianInt& x);

}  // namespace holoprec
