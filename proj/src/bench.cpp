#include "holoprec/bench.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <sys/resource.h>

#include <nlohmann/json.hpp>

#include "holoprec/catalog.hpp"

namespace holoprec {

namespace {

std::int64_t max_rss_kb() {
    struct rusage ru{};
    if (getrusage(RUSAGE_SELF, &ru) != 0) return -1;
    return static_cast<std::int64_t>(ru.ru_maxrss);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Rat pow2_rat_neg(std::int64_t e) {
    Int d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    Rat out(1, d);
    out.canonicalize();
    return out;
}

}  // namespace

bool BenchRecord::operator==(const BenchRecord& o) const {
    return problem == o.problem && mode == o.mode && p == o.p && n == o.n &&
           delta == o.delta && lg_m == o.lg_m && wall_ns == o.wall_ns &&
           peak_bits == o.peak_bits && digest == o.digest && rss_max_kb == o.rss_max_kb;
}

std::vector<BenchRecord> run_series(const std::string& problem,
                                    const std::vector<EvalMode>& modes,
                                    const std::vector<std::int64_t>& p_list,
                                    const BenchOptions& opts) {
    const CatalogProblem* prob = find_problem(problem);
    if (prob == nullptr) throw ParseError("unknown catalog problem \"" + problem + "\"");
    std::vector<BenchRecord> out;
    bool was_enabled = ledger::enabled();
    ledger::enable(true);
    for (std::int64_t p : p_list) {
        std::vector<EvalResult> results;
        for (EvalMode mode : modes) {
            EvalRequest req;
            req.ode = prob->ode;
            req.inits = prob->inits;
            req.point = prob->point;
            req.p = p;
            req.options.mode = mode;
            req.options.threshold = opts.threshold;
            req.options.heuristic_bounds = opts.heuristic_bounds;
            ledger::reset();
            EvalResult res = evaluate(req);
            if (opts.tamper) opts.tamper(res);
            results.push_back(std::move(res));
        }
        // cross-validate before emitting anything for this p
        for (std::size_t i = 1; i < results.size(); ++i) {
            GaussianRational diff = results[i].value.to_gaussian_rational() -
                                    results[0].value.to_gaussian_rational();
            if (diff.normalized().modulus_upper() > Rat(2) * pow2_rat_neg(p)) {
                ledger::enable(was_enabled);
                throw CorrectnessRegressionError(
                    "bench digest mismatch: modes disagree beyond 2^(1-p) at p = " +
                    std::to_string(p) + " on problem " + problem);
            }
        }
        for (std::size_t i = 0; i < results.size(); ++i) {
            const EvalResult& r = results[i];
            BenchRecord rec;
            rec.problem = problem;
            rec.mode = to_string(modes[i]);
            rec.p = p;
            rec.n = r.n;
            rec.delta = r.delta;
            rec.lg_m = r.lg_m;
            rec.wall_ns = r.wall_ns;
            rec.peak_bits = r.ledger_peak_bits;
            rec.digest = r.digest();
            if (opts.with_rss) rec.rss_max_kb = max_rss_kb();
            out.push_back(std::move(rec));
        }
    }
    ledger::enable(was_enabled);
    return out;
}

std::map<std::string, FitResult> fit_scaling(const std::vector<BenchRecord>& records) {
    std::map<std::string, std::vector<std::pair<double, double>>> by_mode;
    for (const auto& r : records) {
        if (r.p <= 0 || r.peak_bits <= 0) continue;
        by_mode[r.mode].emplace_back(std::log2(static_cast<double>(r.p)),
                                     std::log2(static_cast<double>(r.peak_bits)));
    }
    std::map<std::string, FitResult> out;
    for (const auto& [mode, pts] : by_mode) {
        if (pts.size() < 4) {
            throw std::invalid_argument("fit_scaling: insufficient data for mode " + mode +
                                        " (need >= 4 records)");
        }
        double n = static_cast<double>(pts.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (auto [x, y] : pts) {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            syy += y * y;
        }
        double denom = n * sxx - sx * sx;
        double slope = (n * sxy - sx * sy) / denom;
        double intercept = (sy - slope * sx) / n;
        double ss_res = 0, ss_tot = 0, ymean = sy / n;
        for (auto [x, y] : pts) {
            double e = y - (slope * x + intercept);
            ss_res += e * e;
            ss_tot += (y - ymean) * (y - ymean);
        }
        out[mode] = FitResult{slope, ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0};
    }
    return out;
}

std::string records_to_csv(const std::vector<BenchRecord>& records, bool with_rss) {
    std::ostringstream os;
    os << "problem,mode,p,N,delta,lgM,wall_ns,peak_bits,digest";
    if (with_rss) os << ",rss_max_kb";
    os << "\n";
    for (const auto& r : records) {
        os << r.problem << "," << r.mode << "," << r.p << "," << r.n << "," << r.delta << ","
           << format_double(r.lg_m) << "," << r.wall_ns << "," << r.peak_bits << ","
           << r.digest;
        if (with_rss) os << "," << r.rss_max_kb;
        os << "\n";
    }
    return os.str();
}

std::vector<BenchRecord> records_from_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    std::vector<BenchRecord> out;
    bool header = true;
    bool with_rss = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (header) {
            header = false;
            with_rss = !fields.empty() && fields.back() == "rss_max_kb";
            continue;
        }
        std::size_t expected = with_rss ? 10 : 9;
        if (fields.size() != expected) {
            throw ParseError("CSV row has " + std::to_string(fields.size()) +
                             " fields, expected " + std::to_string(expected));
        }
        BenchRecord r;
        r.problem = fields[0];
        r.mode = fields[1];
        r.p = std::stoll(fields[2]);
        r.n = std::stoll(fields[3]);
        r.delta = std::stoll(fields[4]);
        r.lg_m = std::stod(fields[5]);
        r.wall_ns = std::stoll(fields[6]);
        r.peak_bits = std::stoll(fields[7]);
        r.digest = fields[8];
        if (with_rss) r.rss_max_kb = std::stoll(fields[9]);
        out.push_back(std::move(r));
    }
    return out;
}

std::string records_to_json(const std::vector<BenchRecord>& records, bool with_rss) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json j;
        j["problem"] = r.problem;
        j["mode"] = r.mode;
        j["p"] = r.p;
        j["N"] = r.n;
        j["delta"] = r.delta;
        j["lgM"] = r.lg_m;
        j["wall_ns"] = r.wall_ns;
        j["peak_bits"] = r.peak_bits;
        j["digest"] = r.digest;
        if (with_rss) j["rss_max_kb"] = r.rss_max_kb;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

}  // namespace holoprec
