#include "holoprec/poly.hpp"

#include <algorithm>
#include <sstream>

namespace holoprec {

namespace {
const GaussianInt kZeroGi{};
}

GiPoly::GiPoly(std::vector<GaussianInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

GiPoly::GiPoly(std::initializer_list<long> real_coeffs) {
    coeffs_.reserve(real_coeffs.size());
    for (long c : real_coeffs) coeffs_.emplace_back(c);
    trim();
}

GiPoly GiPoly::constant(GaussianInt c) {
    GiPoly p;
    p.coeffs_.push_back(std::move(c));
    p.trim();
    return p;
}

GiPoly GiPoly::monomial(GaussianInt c, std::size_t degree) {
    GiPoly p;
    p.coeffs_.assign(degree + 1, kZeroGi);
    p.coeffs_[degree] = std::move(c);
    p.trim();
    return p;
}

void GiPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

const GaussianInt& GiPoly::coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : kZeroGi;
}

const GaussianInt& GiPoly::leading() const {
    return coeffs_.empty() ? kZeroGi : coeffs_.back();
}

GiPoly GiPoly::operator+(const GiPoly& o) const {
    std::vector<GaussianInt> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + o.coeff(k);
    return GiPoly(std::move(out));
}

GiPoly GiPoly::operator-(const GiPoly& o) const { return *this + (-o); }

GiPoly GiPoly::operator-() const {
    std::vector<GaussianInt> out = coeffs_;
    for (auto& c : out) c = -c;
    return GiPoly(std::move(out));
}

GiPoly GiPoly::operator*(const GiPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<GaussianInt> out(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * o.coeffs_[j];
        }
    }
    return GiPoly(std::move(out));
}

GiPoly GiPoly::scaled(const GaussianInt& c) const {
    std::vector<GaussianInt> out = coeffs_;
    for (auto& x : out) x = x * c;
    return GiPoly(std::move(out));
}

GiPoly GiPoly::shifted_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<GaussianInt> out(coeffs_.size() + k);
    std::copy(coeffs_.begin(), coeffs_.end(), out.begin() + static_cast<std::ptrdiff_t>(k));
    return GiPoly(std::move(out));
}

GaussianInt GiPoly::eval(const Int& x) const {
    GaussianInt acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = GaussianInt(acc.re * x, acc.im * x) + *it;
    }
    return acc;
}

GaussianRational GiPoly::eval(const GaussianRational& x) const {
    GaussianRational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + GaussianRational(*it, Int(1));
    }
    return acc;
}

GiPoly GiPoly::compose_shift(const Int& a) const {
    GiPoly acc;
    GiPoly shift({GaussianInt(a, Int(0)), GaussianInt(1)});  // x + a
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * shift + GiPoly::constant(*it);
    }
    return acc;
}

std::int64_t GiPoly::max_coeff_bit_size() const {
    std::int64_t out = 1;
    for (const auto& c : coeffs_) out = std::max(out, bit_size(c));
    return out;
}

std::string GiPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::int64_t k = degree(); k >= 0; --k) {
        const GaussianInt& c = coeffs_[static_cast<std::size_t>(k)];
        if (c.is_zero()) continue;
        std::string cs;
        bool negated = false;
        if (c.im == 0) {
            Int a = abs(c.re);
            negated = c.re < 0;
            cs = (a == 1 && k > 0) ? "" : a.get_str();
        } else {
            cs = "(" + holoprec::to_string(c) + ")";
        }
        if (first) {
            if (negated) os << "-";
        } else {
            os << (negated ? "-" : "+");
        }
        first = false;
        if (k == 0) {
            os << (cs.empty() ? "1" : cs);
        } else {
            if (!cs.empty()) os << cs << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

QPoly::QPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void QPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat QPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + o.coeff(k);
    return QPoly(std::move(out));
}

QPoly QPoly::operator-(const QPoly& o) const {
    std::vector<Rat> out(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) - o.coeff(k);
    return QPoly(std::move(out));
}

QPoly QPoly::scaled(const Rat& c) const {
    std::vector<Rat> out = coeffs_;
    for (auto& x : out) x *= c;
    return QPoly(std::move(out));
}

Rat QPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly QPoly::compose_shift(const Int& a) const {
    std::vector<Rat> acc;
    Rat shift(a);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        // acc = acc * (x + a) + c
        std::vector<Rat> next(acc.size() + 1);
        for (std::size_t k = 0; k < acc.size(); ++k) {
            next[k + 1] += acc[k];
            next[k] += acc[k] * shift;
        }
        if (next.empty()) next.emplace_back(0);
        next[0] += *it;
        acc = std::move(next);
    }
    return QPoly(std::move(acc));
}

bool QPoly::all_coeffs_nonnegative() const {
    for (const auto& c : coeffs_) {
        if (c < 0) return false;
    }
    return true;
}

}  // namespace holoprec
