#include "holoprec/matrix.hpp"

#include <algorithm>
#include <functional>

namespace holoprec {

GiMatrix GiMatrix::identity(std::size_t k) {
    GiMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = GaussianInt(1);
    return m;
}

GiMatrix GiMatrix::operator*(const GiMatrix& o) const {
    GiMatrix out(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = 0; j < k_; ++j) {
            GaussianInt acc;
            for (std::size_t l = 0; l < k_; ++l) acc += at(i, l) * o.at(l, j);
            out.at(i, j) = std::move(acc);
        }
    }
    return out;
}

std::int64_t GiMatrix::storage_bits() const {
    std::int64_t bits = 0;
    for (const auto& e : entries_) bits += e.storage_bits();
    return bits;
}

KMatrix KMatrix::identity(std::size_t k) {
    KMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = GaussianRational(1);
    return m;
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
    KMatrix out(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = 0; j < k_; ++j) {
            GaussianRational acc(0);
            for (std::size_t l = 0; l < k_; ++l) acc = acc + at(i, l) * o.at(l, j);
            out.at(i, j) = acc.normalized();
        }
    }
    return out;
}

std::vector<GaussianRational> KMatrix::apply(const std::vector<GaussianRational>& v) const {
    std::vector<GaussianRational> out(k_, GaussianRational(0));
    for (std::size_t i = 0; i < k_; ++i) {
        GaussianRational acc(0);
        for (std::size_t j = 0; j < k_; ++j) acc = acc + at(i, j) * v[j];
        out[i] = acc.normalized();
    }
    return out;
}

bool KMatrix::inverse(KMatrix& out) const {
    std::size_t k = k_;
    KMatrix work = *this;
    KMatrix inv = KMatrix::identity(k);
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && work.at(pivot, col).is_zero()) ++pivot;
        if (pivot == k) return false;
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        GaussianRational p = work.at(col, col);
        for (std::size_t j = 0; j < k; ++j) {
            work.at(col, j) = (work.at(col, j) / p).normalized();
            inv.at(col, j) = (inv.at(col, j) / p).normalized();
        }
        for (std::size_t i = 0; i < k; ++i) {
            if (i == col || work.at(i, col).is_zero()) continue;
            GaussianRational f = work.at(i, col);
            for (std::size_t j = 0; j < k; ++j) {
                work.at(i, j) = (work.at(i, j) - f * work.at(col, j)).normalized();
                inv.at(i, j) = (inv.at(i, j) - f * inv.at(col, j)).normalized();
            }
        }
    }
    out = std::move(inv);
    return true;
}

Rat KMatrix::norm_1_upper() const { return norm_1_tight_upper(*this); }

DyadicMatrix DyadicMatrix::identity(std::size_t k) {
    DyadicMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) m.mant(i, i) = GaussianInt(1);
    return m;
}

GaussianRational DyadicMatrix::at_rational(std::size_t i, std::size_t j) const {
    Int d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent_));
    return {entries_[i * k_ + j], d};
}

DyadicMatrix DyadicMatrix::operator*(const DyadicMatrix& o) const {
    DyadicMatrix out(k_);
    out.exponent_ = exponent_ + o.exponent_;
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = 0; j < k_; ++j) {
            GaussianInt acc;
            for (std::size_t l = 0; l < k_; ++l) acc += mant(i, l) * o.mant(l, j);
            out.mant(i, j) = std::move(acc);
        }
    }
    return out;
}

bool DyadicMatrix::operator==(const DyadicMatrix& o) const {
    if (k_ != o.k_) return false;
    for (std::size_t i = 0; i < k_; ++i) {
        for (std::size_t j = 0; j < k_; ++j) {
            if (!(at(i, j) == o.at(i, j))) return false;
        }
    }
    return true;
}

DyadicMatrix DyadicMatrix::truncated_at(std::int64_t e) const {
    DyadicMatrix out(k_);
    out.exponent_ = e;
    auto shift_component = [&](const Int& m) {
        Int r;
        if (e >= exponent_) {
            mpz_mul_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e - exponent_));
        } else {
            // truncation toward zero == sgn * floor(|m| / 2^k)
            mpz_tdiv_q_2exp(r.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent_ - e));
        }
        return r;
    };
    for (std::size_t idx = 0; idx < entries_.size(); ++idx) {
        out.entries_[idx] = GaussianInt(shift_component(entries_[idx].re),
                                        shift_component(entries_[idx].im));
    }
    return out;
}

std::int64_t DyadicMatrix::max_component_bits() const {
    std::int64_t out = 0;
    for (const auto& e : entries_) {
        out = std::max({out, bit_length(e.re), bit_length(e.im)});
    }
    return out;
}

std::int64_t DyadicMatrix::storage_bits() const {
    std::int64_t bits = 0;
    for (const auto& e : entries_) bits += e.storage_bits();
    return bits;
}

namespace {

Rat column_sum_max(std::size_t k, const std::function<Rat(std::size_t, std::size_t)>& entry_ub) {
    Rat best(0);
    for (std::size_t j = 0; j < k; ++j) {
        Rat sum(0);
        for (std::size_t i = 0; i < k; ++i) sum += entry_ub(i, j);
        if (sum > best) best = sum;
    }
    return best;
}

}  // namespace

Rat norm_1(const DyadicMatrix& a) {
    Int d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(a.exponent()));
    return column_sum_max(a.dim(), [&](std::size_t i, std::size_t j) {
        const GaussianInt& m = a.mant(i, j);
        Rat out(abs(m.re) + abs(m.im), d);
        out.canonicalize();
        return out;
    });
}

Rat norm_1(const KMatrix& a) {
    return column_sum_max(a.dim(), [&](std::size_t i, std::size_t j) {
        const GaussianRational& e = a.at(i, j);
        Rat out(abs(e.num.re) + abs(e.num.im), e.den);
        out.canonicalize();
        return out;
    });
}

Rat norm_1_tight_upper(const KMatrix& a) {
    return column_sum_max(a.dim(), [&](std::size_t i, std::size_t j) {
        return a.at(i, j).modulus_upper();
    });
}

Rat diff_norm_1_upper(const DyadicMatrix& a, const KMatrix& b) {
    return column_sum_max(a.dim(), [&](std::size_t i, std::size_t j) {
        GaussianRational d = a.at_rational(i, j) - b.at(i, j);
        return d.normalized().modulus_upper();
    });
}

}  // namespace holoprec
