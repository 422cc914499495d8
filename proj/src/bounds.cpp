#include "holoprec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "holoprec/upper_dyadic.hpp"

namespace holoprec {

namespace {

double rat_lg(const Rat& q) {
    signed long en = 0, ed = 0;
    double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return std::log2(std::abs(dn)) + static_cast<double>(en) - std::log2(dd) -
           static_cast<double>(ed);
}

Rat rat_pow(const Rat& q, std::uint64_t t) {
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(t));
    mpz_pow_ui(d.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(t));
    Rat out(n, d);
    out.canonicalize();
    return out;
}

// ---- transform candidates ----------------------------------------------

Rat rationalize(double x, long max_den) {
    if (!std::isfinite(x)) return Rat(0);
    bool neg = x < 0;
    double a = std::abs(x);
    // continued fraction expansion with bounded denominator
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = a;
    for (int iter = 0; iter < 40; ++iter) {
        double fl = std::floor(v);
        if (fl > 1e17) break;
        long ai = static_cast<long>(fl);
        if (q1 != 0 && (ai > (max_den - q0) / q1)) break;
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q1 == 0) return Rat(0);
    Rat out(p1, q1);
    out.canonicalize();
    return neg ? Rat(-out) : out;
}

std::vector<std::complex<double>> durand_kerner(std::vector<std::complex<double>> monic,
                                                int iters) {
    // monic: coefficients c_0..c_{d-1} of z^d + sum c_k z^k
    std::size_t d = monic.size();
    std::vector<std::complex<double>> roots(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> w(1.0, 0.0);
    for (auto& r : roots) {
        w *= seed;
        r = w;
    }
    auto eval = [&](std::complex<double> z) {
        std::complex<double> acc(1.0, 0.0);
        for (std::size_t k = d; k-- > 0;) acc = acc * z + monic[k];
        return acc;
    };
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < d; ++i) {
            std::complex<double> den(1.0, 0.0);
            for (std::size_t j = 0; j < d; ++j) {
                if (j != i) den *= roots[i] - roots[j];
            }
            if (std::abs(den) < 1e-300) continue;
            roots[i] -= eval(roots[i]) / den;
        }
    }
    return roots;
}

KMatrix diag_scaling(std::size_t k, const Rat& lambda, bool ascending) {
    KMatrix m(k);
    Rat v(1);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t idx = ascending ? i : k - 1 - i;
        m.at(idx, idx) = GaussianRational(v, Rat(0));
        v *= lambda;
    }
    return m;
}

// Candidate transforms: identity, pure diagonal scalings, and Vandermonde
// matrices built on float eigenvalue hints for the limit companion matrix
// (exact verification decides which of them actually certify).
std::vector<KMatrix> transform_candidates(const Recurrence& rec) {
    std::size_t s = rec.degree;
    std::vector<KMatrix> out;
    out.push_back(KMatrix{});  // identity marker
    if (s >= 2) {
        for (const Rat& lam : {Rat(1, 2), Rat(1, 8), Rat(1, 64)}) {
            out.push_back(diag_scaling(s, lam, true));
            out.push_back(diag_scaling(s, lam, false));
        }
    }
    // limit companion char poly: z^s + sum_{k<s} (c_{s-k}/c_0) z^k where
    // c_j is the degree-r coefficient of b_j
    const GaussianInt& c0 = rec.b[0].coeff(rec.order);
    bool constant_lead = true;
    for (std::size_t j = 1; j <= s; ++j) {
        if (!rec.b[j].coeff(rec.order).is_zero()) constant_lead = false;
    }
    if (!constant_lead && s >= 2) {
        std::complex<double> c0d(c0.re.get_d(), c0.im.get_d());
        for (auto [iters, max_den] : {std::pair{120, 1L << 16}, std::pair{500, 1L << 24}}) {
            std::vector<std::complex<double>> monic(s);
            for (std::size_t k = 0; k < s; ++k) {
                const GaussianInt& ck = rec.b[s - k].coeff(rec.order);
                monic[k] = std::complex<double>(ck.re.get_d(), ck.im.get_d()) / c0d;
            }
            auto roots = durand_kerner(monic, iters);
            KMatrix vand(s);
            for (std::size_t j = 0; j < s; ++j) {
                GaussianRational mu(rationalize(roots[j].real(), max_den),
                                    rationalize(roots[j].imag(), max_den));
                GaussianRational pw(1);
                for (std::size_t i = 0; i < s; ++i) {
                    vand.at(i, j) = pw;
                    pw = (pw * mu).normalized();
                }
            }
            out.push_back(vand);
            for (const Rat& lam : {Rat(1, 2), Rat(1, 8)}) {
                out.push_back(vand * diag_scaling(s, lam, true));
            }
        }
    }
    return out;
}

// ---- exact feasibility machinery ----------------------------------------

struct TransformData {
    bool identity = true;
    KMatrix pi;
    KMatrix pi_inv;
    std::vector<GiPoly> g;  // s x s numerator polynomials, row-major
    GiPoly dpoly;           // common denominator polynomial (Gaussian)
    QPoly lb_poly;          // rational lower bound on |dpoly(n)|, n >= 0
    std::vector<QPoly> col_ub;  // per-column sum of modulus-ub polynomials
    Rat pi_norm_ub;             // >= ||Pi||_1
    std::size_t dim = 0;
};

QPoly modulus_ub_poly(const GiPoly& p) {
    std::vector<Rat> cs;
    cs.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) cs.emplace_back(modulus_ub(c));
    return QPoly(std::move(cs));
}

QPoly modulus_lb_poly(const GiPoly& p) {
    bool real_nonneg = true;
    for (const auto& c : p.coeffs()) {
        if (c.im != 0 || c.re < 0) real_nonneg = false;
    }
    std::vector<Rat> cs(static_cast<std::size_t>(p.degree()) + 1, Rat(0));
    if (real_nonneg) {
        for (std::size_t k = 0; k < cs.size(); ++k) cs[k] = Rat(p.coeff(k).re);
    } else {
        for (std::size_t k = 0; k + 1 < cs.size(); ++k) cs[k] = -Rat(modulus_ub(p.coeff(k)));
        cs.back() = modulus_lb(p.leading());
    }
    return QPoly(std::move(cs));
}

// Clear denominators: A = M / m with M over Z[i] and m a positive integer.
void integerize(const KMatrix& a, std::vector<GaussianInt>& m_out, Int& den_out) {
    std::size_t k = a.dim();
    Int den(1);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            Int d = a.at(i, j).normalized().den;
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
        }
    }
    m_out.assign(k * k, GaussianInt());
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            GaussianRational e = a.at(i, j).normalized();
            Int scale;
            mpz_divexact(scale.get_mpz_t(), den.get_mpz_t(), e.den.get_mpz_t());
            m_out[i * k + j] = scale * e.num;
        }
    }
    den_out = std::move(den);
}

// Numerator polynomials of zeta*C(n): superdiagonal zhat*b_0(n), last row
// -zhat*b_{s-j}(n); the common denominator is zcheck*b_0(n).
std::vector<GiPoly> companion_numerators(const Recurrence& rec, const EvalPoint& pt) {
    std::size_t s = rec.degree;
    std::vector<GiPoly> chat(s * s);
    GiPoly zb0;
    {
        std::vector<GaussianInt> cs;
        for (const auto& c : rec.b[0].coeffs()) cs.push_back(pt.zeta_num * c);
        zb0 = GiPoly(std::move(cs));
    }
    for (std::size_t i = 0; i + 1 < s; ++i) chat[i * s + (i + 1)] = zb0;
    for (std::size_t j = 0; j < s; ++j) {
        const GiPoly& bk = rec.b[s - j];
        if (bk.is_zero()) continue;
        std::vector<GaussianInt> cs;
        for (const auto& c : bk.coeffs()) cs.push_back(-(pt.zeta_num * c));
        chat[(s - 1) * s + j] = chat[(s - 1) * s + j] + GiPoly(std::move(cs));
    }
    return chat;
}

bool prepare_transform(const Recurrence& rec, const EvalPoint& pt, const KMatrix& pi,
                       TransformData& out) {
    std::size_t s = rec.degree;
    out.dim = s;
    out.identity = pi.dim() == 0;
    std::vector<GiPoly> chat = companion_numerators(rec, pt);
    Int extra(pt.zeta_den);
    if (out.identity) {
        out.g = std::move(chat);
        out.pi_norm_ub = Rat(1);
    } else {
        if (pi.dim() != s) return false;
        KMatrix inv;
        if (!pi.inverse(inv)) return false;
        out.pi = pi;
        out.pi_inv = inv;
        std::vector<GaussianInt> u_m, v_m;
        Int u_den, v_den;
        integerize(pi, u_m, u_den);
        integerize(inv, v_m, v_den);
        // G = V * Chat * U
        std::vector<GiPoly> tmp(s * s), g(s * s);
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                GiPoly acc;
                for (std::size_t l = 0; l < s; ++l) {
                    if (chat[i * s + l].is_zero() || u_m[l * s + j].is_zero()) continue;
                    acc = acc + chat[i * s + l].scaled(u_m[l * s + j]);
                }
                tmp[i * s + j] = std::move(acc);
            }
        }
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                GiPoly acc;
                for (std::size_t l = 0; l < s; ++l) {
                    if (v_m[i * s + l].is_zero() || tmp[l * s + j].is_zero()) continue;
                    acc = acc + tmp[l * s + j].scaled(v_m[i * s + l]);
                }
                g[i * s + j] = std::move(acc);
            }
        }
        out.g = std::move(g);
        extra *= u_den * v_den;
        out.pi_norm_ub = norm_1_tight_upper(pi);
    }
    out.dpoly = rec.b[0].scaled(GaussianInt(extra, Int(0)));
    out.lb_poly = modulus_lb_poly(out.dpoly);
    out.col_ub.assign(s, QPoly());
    for (std::size_t j = 0; j < s; ++j) {
        QPoly sum;
        for (std::size_t i = 0; i < s; ++i) sum = sum + modulus_ub_poly(out.g[i * s + j]);
        out.col_ub[j] = std::move(sum);
    }
    return true;
}

// Smallest q making every shifted column inequality hold at n1, or nullopt.
std::optional<Rat> feasible_q(const TransformData& td, std::int64_t n1) {
    QPoly lshift = td.lb_poly.compose_shift(Int(n1));
    if (!lshift.all_coeffs_nonnegative()) return std::nullopt;
    Rat qmin(0);
    for (const auto& colpoly : td.col_ub) {
        QPoly pshift = colpoly.compose_shift(Int(n1));
        if (pshift.degree() > lshift.degree()) return std::nullopt;
        for (std::size_t k = 0; k <= static_cast<std::size_t>(std::max<std::int64_t>(
                                        pshift.degree(), 0));
             ++k) {
            Rat pk = pshift.coeff(k);
            if (pk == 0) continue;
            Rat lk = lshift.coeff(k);
            if (lk == 0) return std::nullopt;
            Rat ratio = pk / lk;
            if (ratio > qmin) qmin = ratio;
        }
    }
    return qmin;
}

// Round q up to a 24-bit dyadic inside (0, 1); nullopt if no such q >= qmin.
std::optional<Rat> dyadicize_q(const Rat& qmin) {
    if (qmin >= 1) return std::nullopt;
    const long scale = 1L << 24;
    Int num = qmin.get_num() * scale;
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), qmin.get_den().get_mpz_t());
    if (q < 1) q = 1;
    if (q >= scale) {
        // qmin lies within one ulp of 1: keep the exact value if it helps
        return qmin > 0 ? std::optional<Rat>(qmin) : std::nullopt;
    }
    Rat out(q, scale);
    out.canonicalize();
    return out;
}

// Upper-bounded column-sum of the transformed step matrix at a concrete n.
UpperDyadic colsum_at(const TransformData& td, std::int64_t n) {
    std::size_t s = td.dim;
    GaussianInt dv = td.dpoly.eval(Int(n));
    if (dv.is_zero()) throw SingularRecurrenceError(n);
    Rat lb = modulus_lb(dv);
    Int best(0);
    for (std::size_t j = 0; j < s; ++j) {
        Int sum(0);
        for (std::size_t i = 0; i < s; ++i) {
            const GiPoly& gij = td.g[i * s + j];
            if (!gij.is_zero()) sum += modulus_ub(gij.eval(Int(n)));
        }
        if (sum > best) best = sum;
    }
    if (best == 0) return {};
    return UpperDyadic::from_fraction(best * lb.get_den(), lb.get_num());
}

UpperDyadic initial_state_norm_ub(const TransformData& td, const InitialVector& inits) {
    std::size_t s = td.dim;
    std::vector<GaussianRational> u0(inits.v.begin(), inits.v.begin() + static_cast<long>(s));
    if (!td.identity) u0 = td.pi_inv.apply(u0);
    Rat sum(0);
    for (const auto& x : u0) sum += x.modulus_upper();
    return UpperDyadic::from_rat(sum);
}

// The order of every rounded multiplication below is part of the certificate
// contract: verification replays the identical sequence.
UpperDyadic finalize_headroom(const UpperDyadic& w, const Rat& pi_norm_ub, const Rat& z_big,
                              const Rat& q, std::size_t order) {
    UpperDyadic h = w * UpperDyadic::from_rat(pi_norm_ub);
    UpperDyadic zpow = UpperDyadic::one();
    for (std::size_t k = 1; k < order; ++k) zpow = zpow * UpperDyadic::from_rat(z_big);
    h = h * zpow;
    for (std::size_t k = 1; k < order; ++k) {
        h = h * UpperDyadic::from_fraction(q.get_den(), q.get_num());
    }
    return h;
}

// minimal t >= 0 with H * q^t < T (0 < q < 1, H >= 0, T > 0)
std::int64_t minimal_power(const Rat& H, const Rat& q, const Rat& T) {
    if (H < T) return 0;
    double need = (rat_lg(H) - rat_lg(T)) / (-rat_lg(q));
    if (need > 1e15) throw ConfigError("truncation order out of range");
    std::int64_t t = need > 1.0 ? static_cast<std::int64_t>(std::ceil(need)) : 1;
    Rat cur = H * rat_pow(q, static_cast<std::uint64_t>(t));
    std::int64_t guard = 0;
    while (cur >= T) {
        cur *= q;
        ++t;
        if (++guard > 2000000) throw ConfigError("truncation order search did not settle");
    }
    while (t > 0) {
        Rat prev = cur / q;
        if (prev < T) {
            cur = prev;
            --t;
        } else {
            break;
        }
    }
    return t;
}

std::vector<std::int64_t> n1_schedule(std::int64_t max_n1) {
    std::vector<std::int64_t> out{0, 1, 2, 3, 4, 6};
    std::int64_t v = 8;
    while (v <= max_n1) {
        out.push_back(v);
        out.push_back(v + v / 2);
        v *= 2;
    }
    out.push_back(max_n1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](std::int64_t x) { return x > max_n1; }),
              out.end());
    return out;
}

struct SearchHit {
    std::int64_t N = 0;
    std::int64_t n1 = 0;
    Rat q;
    Rat headroom;
    KMatrix pi;  // dim 0 == identity
};

// Walk all (transform, n1) pairs; report the best hit under `better`.
// When minimizing N, onsets at or past the current best N cannot help
// (the certificate needs N >= n1), so the scan stops there.
template <typename Score>
std::optional<SearchHit> search_certificates(const Recurrence& rec, const EvalPoint& pt,
                                             const InitialVector& inits, const Rat& eps,
                                             std::int64_t max_n1, bool minimize_n,
                                             Score better) {
    Rat z_ub = pt.zeta.modulus_upper();
    Rat z_big = z_ub > 1 ? z_ub : Rat(1);
    std::optional<SearchHit> best;
    auto schedule = n1_schedule(max_n1);
    for (const KMatrix& cand : transform_candidates(rec)) {
        TransformData td;
        if (!prepare_transform(rec, pt, cand, td)) continue;
        UpperDyadic w = initial_state_norm_ub(td, inits);
        std::int64_t w_at = 0;
        for (std::int64_t n1 : schedule) {
            if (minimize_n && best && n1 >= best->N) break;
            while (w_at < n1) {
                w = w * colsum_at(td, w_at);
                ++w_at;
            }
            auto qmin = feasible_q(td, n1);
            if (!qmin) continue;
            auto q = dyadicize_q(std::max(*qmin, Rat(1, 1L << 24)));
            if (!q) continue;
            Rat hr = finalize_headroom(w, td.pi_norm_ub, z_big, *q, rec.order).to_rat();
            std::int64_t n_target;
            if (hr == 0) {
                n_target = n1;
            } else {
                Rat budget = eps * (Rat(1) - *q);
                std::int64_t t = minimal_power(hr, *q, budget);
                n_target = n1 + std::max<std::int64_t>(
                                    t, static_cast<std::int64_t>(rec.order) - 1);
            }
            SearchHit hit{n_target, n1, *q, hr, td.identity ? KMatrix{} : td.pi};
            if (!best || better(hit, *best)) best = hit;
        }
    }
    return best;
}

GaussianRational default_probe(const Recurrence& rec, const EvalPoint& pt,
                               const InitialVector& inits, std::int64_t N) {
    return exact_partial_sum(rec, pt, inits, N);
}

}  // namespace

std::vector<GaussianRational> unroll_coefficients(const Recurrence& rec,
                                                  const InitialVector& inits,
                                                  std::int64_t count) {
    std::vector<GaussianRational> y(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)),
                                    GaussianRational(0));
    std::size_t s = rec.degree, r = rec.order;
    for (std::size_t k = 0; k < r && static_cast<std::int64_t>(k) < count; ++k) {
        y[k] = inits.v[s - r + k];
    }
    for (std::int64_t n = 0; n + static_cast<std::int64_t>(r) < count; ++n) {
        GaussianInt b0 = rec.lead_at(n);
        GaussianRational acc(0);
        for (std::size_t j = 1; j <= s; ++j) {
            std::int64_t idx = n + static_cast<std::int64_t>(r) - static_cast<std::int64_t>(j);
            if (idx < 0 || rec.b[j].is_zero() || y[static_cast<std::size_t>(idx)].is_zero()) {
                continue;
            }
            acc = acc + GaussianRational(rec.b[j].eval(Int(n)), Int(1)) *
                            y[static_cast<std::size_t>(idx)];
        }
        y[static_cast<std::size_t>(n) + r] =
            (-acc / GaussianRational(b0, Int(1))).normalized();
    }
    return y;
}

GaussianRational exact_partial_sum(const Recurrence& rec, const EvalPoint& pt,
                                   const InitialVector& inits, std::int64_t N) {
    auto y = unroll_coefficients(rec, inits, N);
    GaussianRational acc(0), zp(1);
    for (std::int64_t n = 0; n < N; ++n) {
        if (!y[static_cast<std::size_t>(n)].is_zero()) {
            acc = (acc + y[static_cast<std::size_t>(n)] * zp).normalized();
        }
        zp = (zp * pt.zeta).normalized();
    }
    return acc;
}

TailCertificate truncation_order(const Recurrence& rec, const EvalPoint& pt,
                                 const InitialVector& inits, const Rat& eps,
                                 const BoundsOptions& opts) {
    if (eps <= 0) throw InvalidToleranceError("tail tolerance must be positive");
    bool all_zero = true;
    for (const auto& v : inits.v) all_zero = all_zero && v.is_zero();
    if (all_zero) {
        TailCertificate cert;
        cert.tail_order = 0;
        cert.n1 = 0;
        cert.q = Rat(1, 2);
        cert.headroom = Rat(0);
        cert.certified = true;
        return cert;
    }
    if (!opts.heuristic) {
        auto hit = search_certificates(
            rec, pt, inits, eps, opts.max_n1, true,
            [](const SearchHit& a, const SearchHit& b) { return a.N < b.N; });
        if (hit) {
            TailCertificate cert;
            cert.tail_order = hit->N;
            cert.n1 = hit->n1;
            cert.q = hit->q;
            cert.transform = hit->pi;
            cert.headroom = hit->headroom;
            cert.certified = true;
            if (!opts.recheck || verify_certificate(cert, rec, pt, inits, eps)) return cert;
        }
    }
    // Heuristic fallback: double N until two successive evaluations agree to
    // eps/4; the result is flagged uncertified.
    auto probe = opts.partial_sum_probe
                     ? opts.partial_sum_probe
                     : [&](std::int64_t N) { return default_probe(rec, pt, inits, N); };
    Rat quarter = eps / 4;
    GaussianRational prev = probe(32);
    for (std::int64_t N = 64; N <= (std::int64_t{1} << 26); N *= 2) {
        GaussianRational cur = probe(N);
        if ((cur - prev).normalized().modulus_upper() <= quarter) {
            TailCertificate cert;
            cert.tail_order = N;
            cert.certified = false;
            cert.q = Rat(0);
            cert.headroom = Rat(0);
            return cert;
        }
        prev = cur;
    }
    throw UnsupportedInstanceError(
        "heuristic truncation order did not settle; the point may lie outside the disk "
        "of convergence");
}

NormTransform opt_norm_transform(const Recurrence& rec, const EvalPoint& pt,
                                 std::int64_t max_n1) {
    InitialVector dummy;
    dummy.v.assign(rec.degree + 1, GaussianRational(0));
    dummy.v[0] = GaussianRational(1);  // headroom is irrelevant for this search
    auto hit = search_certificates(rec, pt, dummy, Rat(1, 2), max_n1, false,
                                   [](const SearchHit& a, const SearchHit& b) {
                                       if (a.q != b.q) return a.q < b.q;
                                       return a.n1 < b.n1;
                                   });
    if (!hit) {
        throw UnsupportedInstanceError(
            "no transform with certified contraction q < 1 found within budget");
    }
    return {hit->pi, hit->q, hit->n1};
}

bool verify_certificate(const TailCertificate& cert, const Recurrence& rec,
                        const EvalPoint& pt, const InitialVector& inits, const Rat& eps) {
    if (!cert.certified) return false;
    if (cert.tail_order < 0 || cert.n1 < 0) return false;
    if (cert.headroom < 0) return false;
    if (cert.headroom == 0) {
        // tail is identically zero from n1 on; still need N past the onset
        if (cert.tail_order < cert.n1) return false;
        bool all_zero = true;
        for (const auto& v : inits.v) all_zero = all_zero && v.is_zero();
        if (all_zero) return true;
    }
    if (cert.q <= 0 || cert.q >= 1) return false;
    TransformData td;
    if (!prepare_transform(rec, pt, cert.transform, td)) return false;
    // contraction inequality for all n >= n1, checked via shifted coefficients
    QPoly lshift = td.lb_poly.compose_shift(Int(cert.n1));
    if (!lshift.all_coeffs_nonnegative()) return false;
    for (const auto& colpoly : td.col_ub) {
        QPoly d = lshift.scaled(cert.q) - colpoly.compose_shift(Int(cert.n1));
        if (!d.all_coeffs_nonnegative()) return false;
    }
    // headroom covers the deterministic state-norm propagation to n1
    UpperDyadic w = initial_state_norm_ub(td, inits);
    for (std::int64_t n = 0; n < cert.n1; ++n) w = w * colsum_at(td, n);
    Rat z_ub = pt.zeta.modulus_upper();
    Rat z_big = z_ub > 1 ? z_ub : Rat(1);
    Rat recomputed = finalize_headroom(w, td.pi_norm_ub, z_big, cert.q, rec.order).to_rat();
    if (cert.headroom < recomputed) return false;
    if (cert.headroom > 0 &&
        cert.tail_order < cert.n1 + static_cast<std::int64_t>(rec.order) - 1) {
        return false;
    }
    // tail inequality: H * q^(N - n1) / (1 - q) <= eps
    Rat tail = cert.headroom *
               rat_pow(cert.q, static_cast<std::uint64_t>(cert.tail_order - cert.n1)) /
               (Rat(1) - cert.q);
    return tail <= eps;
}

std::string certificate_to_json(const TailCertificate& cert) {
    nlohmann::json j;
    j["N"] = cert.tail_order;
    j["certified"] = cert.certified;
    if (cert.certified) {
        j["n1"] = cert.n1;
        j["q"] = cert.q.get_str();
        j["headroom"] = cert.headroom.get_str();
        if (cert.transform.dim() == 0) {
            j["transform"] = "identity";
        } else {
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t i = 0; i < cert.transform.dim(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t jj = 0; jj < cert.transform.dim(); ++jj) {
                    row.push_back(to_string(cert.transform.at(i, jj)));
                }
                rows.push_back(std::move(row));
            }
            j["transform"] = std::move(rows);
        }
    } else {
        j["mode"] = "heuristic";
    }
    return j.dump(2);
}

std::optional<NormRefinement> make_norm_refinement(const Recurrence& rec,
                                                   const EvalPoint& pt) {
    NormTransform nt;
    try {
        nt = opt_norm_transform(rec, pt, 2048);
    } catch (const UnsupportedInstanceError&) {
        return std::nullopt;
    } catch (const SingularRecurrenceError&) {
        return std::nullopt;
    }
    std::size_t s = rec.degree;
    KMatrix base = nt.pi.dim() == 0 ? KMatrix::identity(s) : nt.pi;
    std::optional<NormRefinement> best;
    double best_score = 0.0;
    for (const Rat& lam : {Rat(1), Rat(1, 2), Rat(1, 4), Rat(1, 16)}) {
        // full transform diag(base * diag(lam^s .. lam), 1)
        KMatrix w(s + 1);
        Rat scale = lam;
        for (std::size_t j = s; j-- > 0;) {
            GaussianRational factor(scale, Rat(0));
            for (std::size_t i = 0; i < s; ++i) {
                w.at(i, j) = (base.at(i, j) * factor).normalized();
            }
            scale *= lam;
        }
        w.at(s, s) = GaussianRational(1);
        KMatrix winv;
        if (!w.inverse(winv)) continue;
        Rat kappa = norm_1_tight_upper(w) * norm_1_tight_upper(winv);
        // untrusted score: limit-ish factor at a moderate index plus the
        // one-off kappa cost (validity never depends on this choice)
        const std::int64_t sample_n = 512;
        KMatrix b;
        try {
            b = step_matrix(rec, pt, sample_n);
        } catch (const SingularRecurrenceError&) {
            continue;
        }
        KMatrix t = winv * b * w;
        double score = 512.0 * rat_lg(norm_1_tight_upper(t) + Rat(1, 1000)) +
                       rat_lg(kappa + Rat(1));
        if (!best || score < best_score) {
            best = NormRefinement{w, winv, kappa};
            best_score = score;
        }
    }
    return best;
}

}  // namespace holoprec
