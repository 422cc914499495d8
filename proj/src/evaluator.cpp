#include "holoprec/evaluator.hpp"

#include <chrono>
#include <sstream>

namespace holoprec {

namespace {

Rat pow2_rat(std::int64_t e) {
    Int d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
    Rat out = e < 0 ? Rat(1, d) : Rat(d);
    out.canonicalize();
    return out;
}

Rat init_vector_norm_ub(const InitialVector& iv) {
    Rat sum(0);
    for (const auto& x : iv.v) sum += x.modulus_upper();
    return sum;
}

// matrix tolerance exponent: 2^-e <= 2^-(p+2) / max(1, ||v||_1)
std::int64_t matrix_precision(std::int64_t p, const Rat& vnorm) {
    std::int64_t extra = 0;
    if (vnorm > 1) extra = ceil_lg_fraction(vnorm.get_num(), vnorm.get_den());
    return p + 2 + std::max<std::int64_t>(extra, 0);
}

GaussianRational last_row_dot(const GiMatrix& mat, const GaussianInt& corner,
                              const std::vector<GaussianRational>& v) {
    std::size_t k = mat.dim();
    GaussianRational acc(0);
    for (std::size_t j = 0; j < k; ++j) {
        if (v[j].is_zero() || mat.at(k - 1, j).is_zero()) continue;
        acc = acc + GaussianRational(mat.at(k - 1, j), Int(1)) * v[j];
    }
    return acc / GaussianRational(corner, Int(1));
}

GaussianRational last_row_dot(const DyadicMatrix& mat, const std::vector<GaussianRational>& v) {
    std::size_t k = mat.dim();
    GaussianRational acc(0);
    for (std::size_t j = 0; j < k; ++j) {
        if (v[j].is_zero()) continue;
        acc = (acc + mat.at_rational(k - 1, j) * v[j]).normalized();
    }
    return acc;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

const char* to_string(EvalMode mode) {
    return mode == EvalMode::classic ? "classic" : "trunc";
}

std::string EvalResult::digest() const {
    std::ostringstream os;
    os << value.re.mantissa.get_str(16) << ":" << value.re.exponent << ":"
       << value.im.mantissa.get_str(16) << ":" << value.im.exponent << ":" << n << ":" << p;
    std::ostringstream hex;
    hex << std::hex << fnv1a(os.str());
    return hex.str();
}

EvalResult evaluate(const EvalRequest& req) {
    if (req.p < 1) throw ConfigError("target precision must be at least 1 bit");
    auto t0 = std::chrono::steady_clock::now();

    Recurrence rec = derive_recurrence(req.ode);
    EvalPoint pt = make_eval_point(req.point, req.ode, req.options.assume_in_disk);
    InitialVector iv = initial_vector(req.ode, req.inits);

    Rat eps_tail = pow2_rat(-(req.p + 2));

    BoundsOptions bopts;
    bopts.heuristic = req.options.heuristic_bounds;
    // heuristic probe through the truncated engine at a finer tolerance
    bopts.partial_sum_probe = [&](std::int64_t n) {
        TruncOptions topts;
        topts.threshold = req.options.threshold;
        topts.threads = req.options.threads;
        TruncResult tr = trunc_bin_split(rec, pt, n, req.p + 4, topts);
        return last_row_dot(tr.p_tilde, iv.v);
    };
    TailCertificate cert = truncation_order(rec, pt, iv, eps_tail, bopts);

    if (!pt.in_disk_by_radius_bound && !pt.assume_in_disk && !cert.certified) {
        throw ConfigError(
            "the evaluation point is not certified inside the disk of convergence "
            "(conservative radius bound rejected it and no tail certificate was found); "
            "pass --assume-in-disk to override");
    }

    std::int64_t n = cert.tail_order;
    Rat vnorm = init_vector_norm_ub(iv);
    std::int64_t p_mat = matrix_precision(req.p, vnorm);

    EvalResult out;
    out.mode = req.options.mode;
    out.p = req.p;
    out.n = n;
    out.certified = cert.certified;
    out.certificate = cert;
    out.assumed_in_disk = pt.assume_in_disk && !pt.in_disk_by_radius_bound;
    out.error_bound = Dyadic(Int(1), req.p);

    GaussianRational sum(0);
    if (req.options.mode == EvalMode::classic) {
        SplitOptions sopts{req.options.threshold, req.options.threads};
        ExactProduct prod = bin_split(rec, pt, 0, n, sopts);
        sum = last_row_dot(prod.mat, prod.corner(), iv.v);
    } else {
        NormRefinement refinement;
        TruncOptions topts;
        topts.threshold = req.options.threshold;
        topts.delta_override = req.options.delta_override;
        topts.threads = req.options.threads;
        topts.collect_iterates = false;
        if (req.options.refine_bound) {
            if (auto r = make_norm_refinement(rec, pt)) {
                refinement = *r;
                topts.refinement = &refinement;
            }
        }
        if (req.options.collect_trace) {
            topts.on_iteration = [&](const TruncIterRecord& r) { out.trace.push_back(r); };
        }
        TruncResult tr = trunc_bin_split(rec, pt, n, p_mat, topts);
        out.delta = tr.stats.delta;
        out.lg_m = tr.stats.lg_m;
        out.lg_m_per_chunk = tr.stats.lg_m_per_chunk;
        sum = last_row_dot(tr.p_tilde, iv.v);
    }
    out.value = trunc_gaussian(sum, pow2_rat(-(req.p + 2)));

    auto probe = ledger::probe();
    out.ledger_peak_bits = probe.peak_bits;
    out.ledger_current_bits = probe.current_bits;
    out.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return out;
}

CompareRecord evaluate_both_and_compare(const EvalRequest& req) {
    EvalRequest creq = req;
    creq.options.mode = EvalMode::classic;
    EvalRequest treq = req;
    treq.options.mode = EvalMode::trunc;
    CompareRecord rec{evaluate(creq), evaluate(treq), Rat(0)};
    GaussianRational diff = rec.classic.value.to_gaussian_rational() -
                            rec.trunc.value.to_gaussian_rational();
    rec.difference_upper = diff.normalized().modulus_upper();
    Rat budget = pow2_rat(-(req.p - 1));
    if (rec.difference_upper > budget) {
        throw CorrectnessRegressionError(
            "classic and truncated evaluations disagree beyond 2^(1-p): |diff| <= " +
            rec.difference_upper.get_str() + " exceeds " + budget.get_str());
    }
    return rec;
}

}  // namespace holoprec
