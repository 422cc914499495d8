#include "holoprec/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "holoprec/bench.hpp"
#include "holoprec/catalog.hpp"
#include "holoprec/evaluator.hpp"

namespace holoprec {

namespace {

struct ProblemSpec {
    std::string catalog_name;
    std::string ode_file;
    std::string point_text;  // overrides the file/catalog point
    bool assume_in_disk = false;
};

struct LoadedProblem {
    ThetaODE ode;
    std::vector<GaussianRational> inits;
    GaussianRational point;
};

LoadedProblem load_problem(const ProblemSpec& spec) {
    LoadedProblem out;
    bool have_point = false;
    if (!spec.catalog_name.empty()) {
        const CatalogProblem* p = find_problem(spec.catalog_name);
        if (p == nullptr) {
            throw ParseError("unknown catalog problem \"" + spec.catalog_name +
                             "\" (see `catalog`)");
        }
        out.ode = p->ode;
        out.inits = p->inits;
        out.point = p->point;
        have_point = true;
    } else if (!spec.ode_file.empty()) {
        std::ifstream ifs(spec.ode_file);
        if (!ifs) throw ParseError("cannot read ODE file \"" + spec.ode_file + "\"");
        std::stringstream buf;
        buf << ifs.rdbuf();
        OdeInput in = parse_ode_json(buf.str());
        out.ode = in.ode;
        out.inits = in.initial_values;
        if (in.has_point) {
            out.point = in.point;
            have_point = true;
        }
    } else {
        throw ParseError("either --catalog or --ode is required");
    }
    if (!spec.point_text.empty()) {
        out.point = parse_gaussian_rational(spec.point_text);
        have_point = true;
    }
    if (!have_point) throw ParseError("no evaluation point given (field 'point' or --point)");
    return out;
}

std::size_t decimal_digits_for(std::int64_t p) {
    // one fewer digit than the bit bound justifies
    double digits = std::floor(static_cast<double>(p) * 0.30102999566398119521);
    return static_cast<std::size_t>(std::max(1.0, digits - 1.0));
}

std::string value_decimal(const DyadicComplex& v, std::int64_t p) {
    std::size_t digits = decimal_digits_for(p);
    std::string re = v.re.to_decimal(digits);
    if (v.im.is_zero()) return re;
    Dyadic im_abs = v.im.mantissa < 0 ? Dyadic(-v.im.mantissa, v.im.exponent) : v.im;
    return re + (v.im.mantissa < 0 ? " - " : " + ") + im_abs.to_decimal(digits) + "*i";
}

nlohmann::json result_json(const EvalResult& r) {
    nlohmann::json j;
    j["value"] = {
        {"re", {{"mantissa", r.value.re.mantissa.get_str()}, {"exponent", r.value.re.exponent}}},
        {"im", {{"mantissa", r.value.im.mantissa.get_str()}, {"exponent", r.value.im.exponent}}},
        {"decimal", value_decimal(r.value, r.p)}};
    j["error_bound"] = "2^-" + std::to_string(r.p);
    j["certified"] = r.certified;
    j["mode"] = to_string(r.mode);
    j["p"] = r.p;
    j["N"] = r.n;
    j["delta"] = r.delta;
    j["lg_m"] = r.lg_m;
    j["ledger_peak_bits"] = r.ledger_peak_bits;
    j["wall_ns"] = r.wall_ns;
    j["assume_in_disk"] = r.assumed_in_disk;
    j["digest"] = r.digest();
    return j;
}

void print_stats(const EvalResult& r, std::ostream& out) {
    out << "stats: N=" << r.n << " delta=" << r.delta << " lgM=" << r.lg_m
        << " lgM/(N/delta)=" << r.lg_m_per_chunk << " ledger_peak_bits=" << r.ledger_peak_bits
        << " wall_ns=" << r.wall_ns << "\n";
    for (const auto& t : r.trace) {
        out << "  iter q=" << t.q << " range=[" << t.chunk_lo << "," << t.chunk_hi << ")"
            << " chunk_bits=" << t.chunk_bits << " acc_bits=" << t.accumulator_bits
            << " ledger_peak=" << t.ledger_peak_bits << "\n";
    }
}

std::int64_t env_threshold_default() {
    const char* env = std::getenv("HOLOPREC_THRESHOLD");
    if (env == nullptr) return kDefaultLeafThreshold;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return kDefaultLeafThreshold;
    return v;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    if (out.empty()) throw ParseError("empty integer list \"" + text + "\"");
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"holoprec: certified evaluation of D-finite power series"};
    app.require_subcommand(1);

    ProblemSpec spec;
    std::int64_t prec_bits = 64;
    std::string mode_name = "trunc";
    std::string bound_mode = "certified";
    std::int64_t threshold = env_threshold_default();
    std::int64_t delta_override = 0;
    std::string output_format = "decimal";
    bool stats = false;
    bool emit_certificate = false;
    bool strict = false;
    bool refine = false;
    int threads = 1;

    auto add_problem_flags = [&](CLI::App* cmd) {
        cmd->add_option("--catalog", spec.catalog_name, "built-in problem name");
        cmd->add_option("--ode", spec.ode_file, "ODE JSON file");
        cmd->add_option("--point", spec.point_text, "evaluation point, e.g. 1/2 or 1/3+1/5*i");
        cmd->add_flag("--assume-in-disk", spec.assume_in_disk,
                      "trust that the point lies inside the disk of convergence");
    };

    CLI::App* eval = app.add_subcommand("eval", "evaluate y(point) to a target precision");
    add_problem_flags(eval);
    eval->add_option("--prec-bits", prec_bits, "target absolute error 2^-p")->check(CLI::PositiveNumber);
    eval->add_option("--mode", mode_name, "classic | trunc | both")
        ->check(CLI::IsMember({"classic", "trunc", "both"}));
    eval->add_option("--bound-mode", bound_mode, "certified | heuristic")
        ->check(CLI::IsMember({"certified", "heuristic"}));
    eval->add_option("--threshold", threshold, "product-tree leaf threshold");
    eval->add_option("--delta", delta_override, "override the chunk count");
    eval->add_option("--output", output_format, "decimal | dyadic | json")
        ->check(CLI::IsMember({"decimal", "dyadic", "json"}));
    eval->add_flag("--stats", stats, "print engine statistics and per-iteration trace");
    eval->add_flag("--emit-certificate", emit_certificate, "print the tail certificate JSON");
    eval->add_flag("--strict", strict, "exit 2 when the result is not certified");
    eval->add_flag("--refine-bound", refine, "tighten the norm bound with a transform");
    eval->add_option("--threads", threads, "parallel workers for the product tree");

    CLI::App* recur = app.add_subcommand("recurrence", "print the coefficient recurrence");
    add_problem_flags(recur);

    CLI::App* convert = app.add_subcommand("convert", "print the theta-form ODE as JSON");
    add_problem_flags(convert);

    CLI::App* cat = app.add_subcommand("catalog", "list built-in problems");

    CLI::App* bench = app.add_subcommand("bench", "time/space scaling across precisions");
    std::string bench_problem = "ln2";
    std::string bench_p = "16384,32768,65536";
    std::string bench_modes = "classic,trunc";
    std::string bench_format = "csv";
    bool bench_fit = false;
    bool bench_rss = false;
    bool inject_mismatch = false;
    bench->add_option("--catalog", bench_problem, "catalog problem to benchmark");
    bench->add_option("--p", bench_p, "comma-separated precision list");
    bench->add_option("--modes", bench_modes, "comma-separated subset of classic,trunc");
    bench->add_option("--format", bench_format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench->add_flag("--fit", bench_fit, "append scaling-fit exponents");
    bench->add_flag("--rss", bench_rss, "append the advisory max-RSS column");
    bench->add_option("--threshold", threshold, "product-tree leaf threshold");
    bench->add_flag("--inject-digest-mismatch", inject_mismatch,
                    "test hook: corrupt one value to exercise the failure path")
        ->group("");  // hidden

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (eval->parsed()) {
            LoadedProblem prob = load_problem(spec);
            EvalRequest req;
            req.ode = prob.ode;
            req.inits = prob.inits;
            req.point = prob.point;
            req.p = prec_bits;
            req.options.threshold = threshold;
            req.options.delta_override = delta_override;
            req.options.heuristic_bounds = bound_mode == "heuristic";
            req.options.assume_in_disk = spec.assume_in_disk;
            req.options.refine_bound = refine;
            req.options.threads = threads;
            req.options.collect_trace = stats;

            auto print_result = [&](const EvalResult& r) {
                if (output_format == "json") {
                    out << result_json(r).dump(2) << "\n";
                } else if (output_format == "dyadic") {
                    out << r.value.to_string() << "\n";
                    out << "error_bound: 2^-" << r.p << "\n";
                    out << "certified: " << (r.certified ? "true" : "false") << "\n";
                } else {
                    out << value_decimal(r.value, r.p) << "\n";
                    out << "error_bound: 2^-" << r.p << "\n";
                    out << "certified: " << (r.certified ? "true" : "false") << "\n";
                }
                if (r.assumed_in_disk) out << "note: in-disk membership was assumed\n";
                if (stats) print_stats(r, out);
                if (emit_certificate) out << certificate_to_json(r.certificate) << "\n";
            };

            bool certified = true;
            if (mode_name == "both") {
                ledger::enable(true);
                ledger::reset();
                CompareRecord cmp = evaluate_both_and_compare(req);
                out << "# classic\n";
                print_result(cmp.classic);
                out << "# trunc\n";
                print_result(cmp.trunc);
                certified = cmp.classic.certified && cmp.trunc.certified;
            } else {
                req.options.mode = mode_name == "classic" ? EvalMode::classic : EvalMode::trunc;
                ledger::enable(true);
                ledger::reset();
                EvalResult r = evaluate(req);
                print_result(r);
                certified = r.certified;
            }
            return strict && !certified ? 2 : 0;
        }
        if (recur->parsed()) {
            LoadedProblem prob = load_problem(spec);
            Recurrence rec = derive_recurrence(prob.ode);
            for (std::size_t j = 0; j < rec.b.size(); ++j) {
                out << "b" << j << " = " << rec.b[j].to_string("n") << "\n";
            }
            return 0;
        }
        if (convert->parsed()) {
            LoadedProblem prob = load_problem(spec);
            out << ode_to_json(prob.ode, prob.inits, &prob.point) << "\n";
            return 0;
        }
        if (cat->parsed()) {
            for (const auto& p : catalog()) {
                out << p.name << ": " << p.description << "\n";
            }
            return 0;
        }
        if (bench->parsed()) {
            std::vector<EvalMode> modes;
            {
                std::istringstream is(bench_modes);
                std::string tok;
                while (std::getline(is, tok, ',')) {
                    if (tok == "classic") {
                        modes.push_back(EvalMode::classic);
                    } else if (tok == "trunc") {
                        modes.push_back(EvalMode::trunc);
                    } else if (!tok.empty()) {
                        throw ParseError("unknown mode \"" + tok + "\"");
                    }
                }
            }
            if (modes.empty()) throw ParseError("no modes requested");
            BenchOptions bopts;
            bopts.threshold = threshold;
            bopts.with_rss = bench_rss;
            if (inject_mismatch) {
                auto first = std::make_shared<bool>(true);
                bopts.tamper = [first](EvalResult& r) {
                    if (*first) {
                        Int bump(1);
                        mpz_mul_2exp(bump.get_mpz_t(), bump.get_mpz_t(),
                                     static_cast<mp_bitcnt_t>(r.value.re.exponent / 2));
                        r.value.re.mantissa += bump;
                        *first = false;
                    }
                };
            }
            auto records = run_series(bench_problem, modes, parse_int_list(bench_p), bopts);
            if (bench_format == "json") {
                out << records_to_json(records, bench_rss) << "\n";
            } else {
                out << records_to_csv(records, bench_rss);
            }
            if (bench_fit) {
                for (const auto& [mode, fit] : fit_scaling(records)) {
                    out << "# fit " << mode << ": exponent=" << fit.exponent
                        << " r2=" << fit.r2 << "\n";
                }
            }
            return 0;
        }
        err << "error: no subcommand\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace holoprec
