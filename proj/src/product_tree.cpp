#include "holoprec/product_tree.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace holoprec {

namespace {

ExactProduct leaf_product(const Recurrence& rec, const EvalPoint& pt, std::int64_t a,
                          std::int64_t b) {
    std::size_t k = rec.state_dim();
    if (a == b) return {GiMatrix::identity(k), a, b};
    GiMatrix acc = hat_step_matrix(rec, pt, a);
    for (std::int64_t n = a + 1; n < b; ++n) {
        acc = hat_step_matrix(rec, pt, n) * acc;
    }
    return {std::move(acc), a, b};
}

ExactProduct split_serial(const Recurrence& rec, const EvalPoint& pt, std::int64_t a,
                          std::int64_t b, std::int64_t threshold) {
    if (b - a <= threshold) return leaf_product(rec, pt, a, b);
    std::int64_t m = a + (b - a) / 2;
    ExactProduct left = split_serial(rec, pt, a, m, threshold);
    ExactProduct right = split_serial(rec, pt, m, b, threshold);
    return {right.mat * left.mat, a, b};
}

#ifdef _OPENMP
ExactProduct split_tasks(const Recurrence& rec, const EvalPoint& pt, std::int64_t a,
                         std::int64_t b, std::int64_t threshold, int depth) {
    if (b - a <= threshold || depth <= 0) return split_serial(rec, pt, a, b, threshold);
    std::int64_t m = a + (b - a) / 2;
    ExactProduct left, right;
#pragma omp task shared(left, rec, pt) firstprivate(a, m, threshold, depth)
    left = split_tasks(rec, pt, a, m, threshold, depth - 1);
    right = split_tasks(rec, pt, m, b, threshold, depth - 1);
#pragma omp taskwait
    return {right.mat * left.mat, a, b};
}
#endif

}  // namespace

ExactProduct bin_split_serial(const Recurrence& rec, const EvalPoint& pt, std::int64_t a,
                              std::int64_t b, std::int64_t threshold) {
    if (a > b) throw std::invalid_argument("bin_split: range must satisfy a <= b");
    if (threshold < 1) threshold = 1;
    return split_serial(rec, pt, a, b, threshold);
}

ExactProduct bin_split(const Recurrence& rec, const EvalPoint& pt, std::int64_t a,
                       std::int64_t b, const SplitOptions& opts) {
    if (a > b) throw std::invalid_argument("bin_split: range must satisfy a <= b");
    std::int64_t threshold = opts.threshold < 1 ? 1 : opts.threshold;
#ifdef _OPENMP
    if (opts.threads > 1) {
        int depth = 1;
        while ((1 << depth) < opts.threads) ++depth;
        depth += 2;  // a few extra levels so tasks stay balanced
        ExactProduct out;
#pragma omp parallel num_threads(opts.threads) shared(out)
        {
#pragma omp single nowait
            out = split_tasks(rec, pt, a, b, threshold, depth);
        }
        return out;
    }
#endif
    return split_serial(rec, pt, a, b, threshold);
}

KMatrix reduce(const ExactProduct& prod) {
    const GaussianInt& corner = prod.corner();
    if (corner.is_zero()) {
        throw CorrectnessRegressionError("exact product has zero corner");
    }
    GaussianInt cc = corner.conj();
    Int nrm = corner.norm();
    std::size_t k = prod.mat.dim();
    KMatrix out(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            out.at(i, j) = GaussianRational(prod.mat.at(i, j) * cc, nrm).normalized();
        }
    }
    return out;
}

ledger::Probe ledger_probe() { return ledger::probe(); }

}  // namespace holoprec
