// Small dense square matrices over Z[i], Q(i), and complex dyadics with a
// shared exponent.  Dimensions are s~+1 (order/degree of the equation), so
// schoolbook multiplication is the right tool; the heavy lifting happens
// inside the big-integer entry products.

#pragma once

#include <cstdint>
#include <vector>

#include "holoprec/gaussian.hpp"

namespace holoprec {

class GiMatrix {
public:
    GiMatrix() = default;
    explicit GiMatrix(std::size_t k) : k_(k), entries_(k * k) {}

    static GiMatrix identity(std::size_t k);

    std::size_t dim() const { return k_; }
    GaussianInt& at(std::size_t i, std::size_t j) { return entries_[i * k_ + j]; }
    const GaussianInt& at(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }

    GiMatrix operator*(const GiMatrix& o) const;
    bool operator==(const GiMatrix& o) const { return k_ == o.k_ && entries_ == o.entries_; }

    std::int64_t storage_bits() const;

private:
    std::size_t k_ = 0;
    std::vector<GaussianInt> entries_;
};

class KMatrix {
public:
    KMatrix() = default;
    explicit KMatrix(std::size_t k) : k_(k), entries_(k * k, GaussianRational(0)) {}

    static KMatrix identity(std::size_t k);

    std::size_t dim() const { return k_; }
    GaussianRational& at(std::size_t i, std::size_t j) { return entries_[i * k_ + j]; }
    const GaussianRational& at(std::size_t i, std::size_t j) const {
        return entries_[i * k_ + j];
    }

    KMatrix operator*(const KMatrix& o) const;
    std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const;

    // Exact inverse by Gauss-Jordan elimination over Q(i); nullopt-style:
    // returns false and leaves out untouched when singular.
    bool inverse(KMatrix& out) const;

    // Exact rational upper bound on the induced 1-norm (max column sum of
    // modulus upper bounds).
    Rat norm_1_upper() const;

private:
    std::size_t k_ = 0;
    std::vector<GaussianRational> entries_;
};

// Matrix of complex dyadics sharing one exponent: entry (i,j) equals
// (re_ij + i*im_ij) * 2^-exponent.  The truncation operator produces a
// uniform exponent, and exact multiplication adds exponents, so the shared
// form is stable under everything the engine does.
class DyadicMatrix {
public:
    DyadicMatrix() = default;
    explicit DyadicMatrix(std::size_t k) : k_(k), exponent_(0), entries_(k * k) {}

    static DyadicMatrix identity(std::size_t k);

    std::size_t dim() const { return k_; }
    std::int64_t exponent() const { return exponent_; }
    void set_exponent(std::int64_t e) { exponent_ = e; }

    GaussianInt& mant(std::size_t i, std::size_t j) { return entries_[i * k_ + j]; }
    const GaussianInt& mant(std::size_t i, std::size_t j) const { return entries_[i * k_ + j]; }

    DyadicComplex at(std::size_t i, std::size_t j) const {
        const GaussianInt& m = entries_[i * k_ + j];
        return {Dyadic(m.re, exponent_), Dyadic(m.im, exponent_)};
    }
    GaussianRational at_rational(std::size_t i, std::size_t j) const;

    // Exact product (mantissa integer product; exponents add).
    DyadicMatrix operator*(const DyadicMatrix& o) const;
    bool operator==(const DyadicMatrix& o) const;

    // Truncate every component toward zero at the target exponent e
    // (exact when e >= exponent()).
    DyadicMatrix truncated_at(std::int64_t e) const;

    std::int64_t max_component_bits() const;
    std::int64_t storage_bits() const;

private:
    std::size_t k_ = 0;
    std::int64_t exponent_ = 0;
    std::vector<GaussianInt> entries_;
};

// Exact rational upper bounds on the induced 1-norm, using the documented
// |x| + |y| >= |x + iy| per-entry overestimate.
Rat norm_1(const DyadicMatrix& a);
Rat norm_1(const KMatrix& a);

// Tighter 1-norm upper bound via isqrt-based modulus bounds (used where the
// slack matters, e.g. certificate checks).
Rat norm_1_tight_upper(const KMatrix& a);

// Exact 1-norm upper bound of the difference a - b (entrywise, tight bounds).
Rat diff_norm_1_upper(const DyadicMatrix& a, const KMatrix& b);

}  // namespace holoprec
