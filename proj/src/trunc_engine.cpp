#include "holoprec/trunc_engine.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace holoprec {

namespace {

struct IntegerizedTransform {
    std::vector<GaussianInt> fwd, inv;  // row-major, dimension k
    Int fwd_den{1}, inv_den{1};
    std::size_t k = 0;
};

IntegerizedTransform integerize_refinement(const NormRefinement& ref) {
    IntegerizedTransform out;
    out.k = ref.pi.dim();
    auto clear = [&](const KMatrix& a, std::vector<GaussianInt>& m, Int& den) {
        den = 1;
        std::size_t k = a.dim();
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                Int d = a.at(i, j).normalized().den;
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
            }
        }
        m.assign(k * k, GaussianInt());
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                GaussianRational e = a.at(i, j).normalized();
                Int scale;
                mpz_divexact(scale.get_mpz_t(), den.get_mpz_t(), e.den.get_mpz_t());
                m[i * k + j] = scale * e.num;
            }
        }
    };
    clear(ref.pi, out.fwd, out.fwd_den);
    clear(ref.pi_inv, out.inv, out.inv_den);
    return out;
}

// Upper bound on one 1 + |z| + |z| max_k |b_k(n)/b_0(n)| factor.
UpperDyadic plain_factor(const Recurrence& rec, const UpperDyadic& z_ub, std::int64_t n) {
    GaussianInt b0 = rec.b[0].eval(Int(n));
    if (b0.is_zero()) throw SingularRecurrenceError(n);
    Rat lb = modulus_lb(b0);
    Int best(0);
    for (std::size_t k = 1; k <= rec.degree; ++k) {
        if (rec.b[k].is_zero()) continue;
        Int ub = modulus_ub(rec.b[k].eval(Int(n)));
        if (ub > best) best = ub;
    }
    UpperDyadic ratio = best == 0 ? UpperDyadic()
                                  : UpperDyadic::from_fraction(best * lb.get_den(),
                                                               lb.get_num());
    return UpperDyadic::one() + z_ub + z_ub * ratio;
}

// Upper bound on the transformed column-sum norm of B(n).
UpperDyadic refined_factor(const Recurrence& rec, const EvalPoint& pt,
                           const IntegerizedTransform& tf, std::int64_t n) {
    GiMatrix bhat = hat_step_matrix(rec, pt, n);
    std::size_t k = tf.k;
    // numerator = inv * bhat * fwd, denominator = inv_den*fwd_den*zc*b_0(n)
    std::vector<GaussianInt> tmp(k * k), num(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            GaussianInt acc;
            for (std::size_t l = 0; l < k; ++l) acc += bhat.at(i, l) * tf.fwd[l * k + j];
            tmp[i * k + j] = std::move(acc);
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            GaussianInt acc;
            for (std::size_t l = 0; l < k; ++l) acc += tf.inv[i * k + l] * tmp[l * k + j];
            num[i * k + j] = std::move(acc);
        }
    }
    GaussianInt b0 = rec.b[0].eval(Int(n));
    Rat lb = modulus_lb(b0) * Rat(tf.fwd_den * tf.inv_den * pt.zeta_den);
    lb.canonicalize();
    Int best(0);
    for (std::size_t j = 0; j < k; ++j) {
        Int sum(0);
        for (std::size_t i = 0; i < k; ++i) sum += modulus_ub(num[i * k + j]);
        if (sum > best) best = sum;
    }
    if (best == 0) return {};
    return UpperDyadic::from_fraction(best * lb.get_den(), lb.get_num());
}

UpperDyadic chunk_norm_bound(const Recurrence& rec, const EvalPoint& pt,
                             const UpperDyadic& z_ub, const IntegerizedTransform* tf,
                             const UpperDyadic& kappa, std::int64_t lo, std::int64_t hi) {
    UpperDyadic plain = UpperDyadic::one();
    for (std::int64_t n = lo; n < hi; ++n) plain = plain * plain_factor(rec, z_ub, n);
    if (tf == nullptr) return plain;
    UpperDyadic refined = kappa;
    for (std::int64_t n = lo; n < hi; ++n) refined = refined * refined_factor(rec, pt, *tf, n);
    return refined < plain ? refined : plain;
}

}  // namespace

DyadicMatrix trunc_matrix(const KMatrix& a, const Rat& eps) {
    std::int64_t e = trunc_exponent(eps) + ceil_lg_ui(2 * a.dim());
    DyadicMatrix out(a.dim());
    out.set_exponent(e);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const GaussianRational& x = a.at(i, j);
            out.mant(i, j) = GaussianInt(trunc_quotient_at(x.num.re, x.den, e).mantissa,
                                         trunc_quotient_at(x.num.im, x.den, e).mantissa);
        }
    }
    return out;
}

std::int64_t chunk_boundary(std::int64_t n, std::int64_t delta, std::int64_t q) {
    return static_cast<std::int64_t>((static_cast<__int128>(n) * q) / delta);
}

std::int64_t default_chunk_count(std::int64_t n, std::int64_t p, std::int64_t h,
                                 std::int64_t order) {
    if (n <= 1) return 1;
    Int num = Int(n) * (Int(h) + Int(order) * ceil_lg(Int(n)));
    Int d;
    mpz_cdiv_q(d.get_mpz_t(), num.get_mpz_t(), Int(p).get_mpz_t());
    std::int64_t delta = d.fits_slong_p() ? d.get_si() : n;
    return std::max<std::int64_t>(1, std::min<std::int64_t>(n, delta));
}

UpperDyadic bound_M(const Recurrence& rec, const EvalPoint& pt, std::int64_t n,
                    std::int64_t delta, std::int64_t p, const NormRefinement* refinement,
                    int threads) {
    UpperDyadic z_ub = UpperDyadic::from_rat(pt.zeta.modulus_upper());
    IntegerizedTransform tf;
    UpperDyadic kappa;
    if (refinement != nullptr && refinement->pi.dim() == rec.state_dim()) {
        tf = integerize_refinement(*refinement);
        kappa = UpperDyadic::from_rat(refinement->kappa);
    } else {
        refinement = nullptr;
    }
    UpperDyadic best = UpperDyadic::one();
#ifdef _OPENMP
    if (threads > 1) {
        std::vector<UpperDyadic> per_chunk(static_cast<std::size_t>(delta));
#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (std::int64_t q = 0; q < delta; ++q) {
            per_chunk[static_cast<std::size_t>(q)] = chunk_norm_bound(
                rec, pt, z_ub, refinement ? &tf : nullptr, kappa,
                chunk_boundary(n, delta, q), chunk_boundary(n, delta, q + 1));
        }
        for (const auto& c : per_chunk) {
            if (best < c) best = c;
        }
        return best + UpperDyadic::pow2(-p);
    }
#endif
    (void)threads;
    for (std::int64_t q = 0; q < delta; ++q) {
        UpperDyadic c = chunk_norm_bound(rec, pt, z_ub, refinement ? &tf : nullptr, kappa,
                                         chunk_boundary(n, delta, q),
                                         chunk_boundary(n, delta, q + 1));
        if (best < c) best = c;
    }
    return best + UpperDyadic::pow2(-p);
}

TruncResult trunc_bin_split(const Recurrence& rec, const EvalPoint& pt, std::int64_t n,
                            std::int64_t p, const TruncOptions& opts) {
    if (p < 1) throw InvalidToleranceError("target precision must be >= 1 bit");
    std::size_t k = rec.state_dim();
    std::int64_t h = rec.h1 + pt.h2;
    std::int64_t delta =
        opts.delta_override > 0
            ? std::max<std::int64_t>(1, std::min<std::int64_t>(std::max<std::int64_t>(n, 1),
                                                               opts.delta_override))
            : default_chunk_count(n, p, h, static_cast<std::int64_t>(rec.order));

    UpperDyadic m = bound_M(rec, pt, n, delta, p, opts.refinement, opts.threads);
    std::int64_t lg2d = ceil_lg_ui(static_cast<std::uint64_t>(2 * delta));
    std::int64_t beta_bits = ceil_lg_ui(static_cast<std::uint64_t>(2 * k));
    std::int64_t cap = p + m.ceil_lg_pow(static_cast<std::uint64_t>(delta)) +
                       ceil_lg_ui(static_cast<std::uint64_t>(delta)) + 64;

    TruncResult out;
    out.stats.n = n;
    out.stats.delta = delta;
    out.stats.m_value = m.to_rat();
    out.stats.lg_m = m.lg_approx();
    out.stats.lg_m_per_chunk =
        delta > 0 && n > 0 ? out.stats.lg_m / (static_cast<double>(n) / delta) : 0.0;
    out.stats.cap_bits = cap;

    auto check_cap = [&](const DyadicMatrix& a, const char* what) {
        std::int64_t bits = a.max_component_bits();
        out.stats.max_entry_bits = std::max(out.stats.max_entry_bits, bits);
        if (bits > cap) {
            throw CorrectnessRegressionError(
                std::string("working-precision cap exceeded in ") + what + ": " +
                std::to_string(bits) + " > " + std::to_string(cap) + " bits");
        }
    };

    DyadicMatrix acc = DyadicMatrix::identity(k);
    ledger::Registration acc_reg(acc.storage_bits());
    SplitOptions split_opts{opts.threshold, opts.threads};

    for (std::int64_t q = 0; q < delta; ++q) {
        std::int64_t lo = chunk_boundary(n, delta, q);
        std::int64_t hi = chunk_boundary(n, delta, q + 1);
        // exponent for Qt: ceil(lg(2 D M^(D-1) / eps)) plus the entry factor
        std::int64_t e_q =
            p + lg2d + m.ceil_lg_pow(static_cast<std::uint64_t>(delta - 1)) + beta_bits;
        std::int64_t chunk_bits = 0;
        DyadicMatrix qt(k);
        {
            ExactProduct chunk = bin_split(rec, pt, lo, hi, split_opts);
            chunk_bits = chunk.mat.storage_bits();
            GaussianInt corner = chunk.corner();
            GaussianInt cc = corner.conj();
            Int nrm = corner.norm();
            qt.set_exponent(e_q);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    GaussianInt num = chunk.mat.at(i, j) * cc;
                    qt.mant(i, j) = GaussianInt(trunc_quotient_at(num.re, nrm, e_q).mantissa,
                                                trunc_quotient_at(num.im, nrm, e_q).mantissa);
                }
            }
        }
        ledger::Registration qt_reg(qt.storage_bits());
        check_cap(qt, "chunk quotient");

        std::int64_t e_p = p + lg2d +
                           m.ceil_lg_pow(static_cast<std::uint64_t>(delta - q - 1)) +
                           beta_bits;
        {
            DyadicMatrix product = qt * acc;
            ledger::Registration prod_reg(product.storage_bits());
            acc = product.truncated_at(e_p);
        }
        qt_reg.release();
        acc_reg.update(acc.storage_bits());
        check_cap(acc, "accumulator");

        if (opts.on_iteration) {
            TruncIterRecord recd;
            recd.q = q;
            recd.chunk_lo = lo;
            recd.chunk_hi = hi;
            recd.chunk_bits = chunk_bits;
            recd.accumulator_bits = acc.storage_bits();
            recd.ledger_peak_bits = ledger::probe().peak_bits;
            if (opts.collect_iterates) recd.accumulator = acc;
            opts.on_iteration(recd);
        }
    }
    out.stats.ledger_peak_bits = ledger::probe().peak_bits;
    out.p_tilde = std::move(acc);
    return out;
}

}  // namespace holoprec
