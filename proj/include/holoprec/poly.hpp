// Dense univariate polynomials: GiPoly over Z[i] (degrees here stay tiny,
// so schoolbook arithmetic throughout) and QPoly over Q for the real-valued
// bound polynomials of the certificate checks.

#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "holoprec/gaussian.hpp"

namespace holoprec {

class GiPoly {
public:
    GiPoly() = default;
    explicit GiPoly(std::vector<GaussianInt> coeffs);
    GiPoly(std::initializer_list<long> real_coeffs);  // low degree first

    static GiPoly zero() { return GiPoly(); }
    static GiPoly constant(GaussianInt c);
    static GiPoly monomial(GaussianInt c, std::size_t degree);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is -1.
    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
    const GaussianInt& coeff(std::size_t k) const;  // 0 for k > degree
    const std::vector<GaussianInt>& coeffs() const { return coeffs_; }
    const GaussianInt& leading() const;

    GiPoly operator+(const GiPoly& o) const;
    GiPoly operator-(const GiPoly& o) const;
    GiPoly operator*(const GiPoly& o) const;
    GiPoly operator-() const;
    bool operator==(const GiPoly& o) const { return coeffs_ == o.coeffs_; }

    GiPoly scaled(const GaussianInt& c) const;
    GiPoly shifted_up(std::size_t k) const;  // multiply by x^k

    GaussianInt eval(const Int& x) const;
    GaussianRational eval(const GaussianRational& x) const;

    // Composition with x -> x + a (Taylor shift by an integer).
    GiPoly compose_shift(const Int& a) const;

    // Max bit size over the coefficients (1 for the zero polynomial).
    std::int64_t max_coeff_bit_size() const;

    // Human form in the given variable, e.g. "n^2+3*n+2", "-1", "(1+i)*n".
    std::string to_string(const std::string& var) const;

private:
    void trim();
    std::vector<GaussianInt> coeffs_;  // low degree first, no trailing zeros
};

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs);

    bool is_zero() const { return coeffs_.empty(); }
    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }
    Rat coeff(std::size_t k) const;
    const std::vector<Rat>& coeffs() const { return coeffs_; }

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly scaled(const Rat& c) const;

    Rat eval(const Rat& x) const;
    QPoly compose_shift(const Int& a) const;  // x -> x + a

    bool all_coeffs_nonnegative() const;

private:
    void trim();
    std::vector<Rat> coeffs_;
};

}  // namespace holoprec
