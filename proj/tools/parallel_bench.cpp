// Serial vs OpenMP comparison for the two parallelizable kernels: the exact
// product tree and the norm-bound scan.  The parallel runs must reproduce the
// serial results bit for bit (exact integer arithmetic); only wall time and
// ledger peaks may differ.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "holoprec/catalog.hpp"
#include "holoprec/product_tree.hpp"
#include "holoprec/trunc_engine.hpp"

using namespace holoprec;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::int64_t terms = 1 << 16;
    int threads = 2;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--terms" && i + 1 < argc) terms = std::stoll(argv[++i]);
        if (a == "--threads" && i + 1 < argc) threads = std::stoi(argv[++i]);
    }
#ifndef _OPENMP
    std::cout << "built without OpenMP; parallel lanes run the serial path\n";
#endif

    const CatalogProblem* prob = find_problem("ln2");
    Recurrence rec = derive_recurrence(prob->ode);
    EvalPoint pt = make_eval_point(prob->point, prob->ode);

    std::printf("kernel,threads,terms,seconds,matches_serial\n");

    auto t0 = std::chrono::steady_clock::now();
    ExactProduct serial = bin_split_serial(rec, pt, 0, terms);
    double ts = seconds_since(t0);
    std::printf("bin_split,1,%lld,%.3f,1\n", static_cast<long long>(terms), ts);

    t0 = std::chrono::steady_clock::now();
    ExactProduct parallel = bin_split(rec, pt, 0, terms, {kDefaultLeafThreshold, threads});
    double tp = seconds_since(t0);
    bool same = parallel.mat == serial.mat;
    std::printf("bin_split,%d,%lld,%.3f,%d\n", threads, static_cast<long long>(terms), tp,
                same ? 1 : 0);

    std::int64_t delta = default_chunk_count(terms, terms, rec.h1 + pt.h2,
                                             static_cast<std::int64_t>(rec.order));
    t0 = std::chrono::steady_clock::now();
    UpperDyadic m1 = bound_M(rec, pt, terms, delta, terms);
    double tb1 = seconds_since(t0);
    std::printf("bound_M,1,%lld,%.3f,1\n", static_cast<long long>(terms), tb1);

    t0 = std::chrono::steady_clock::now();
    UpperDyadic m2 = bound_M(rec, pt, terms, delta, terms, nullptr, threads);
    double tb2 = seconds_since(t0);
    bool msame = m1.to_rat() == m2.to_rat();
    std::printf("bound_M,%d,%lld,%.3f,%d\n", threads, static_cast<long long>(terms), tb2,
                msame ? 1 : 0);

    if (!same || !msame) {
        std::cerr << "parallel results diverged from the serial reference\n";
        return 1;
    }
    return 0;
}
