// Command-line front end: spectrum | charpoly | mainpoly | walkmatrix |
// assoc | eigvecs | lexpow | verify | bench.
//
// stdout carries only the JSON document; diagnostics and human-readable
// tables go to stderr. Exit codes: 0 success, 1 verification/computation
// failure, 2 usage or parse error.

#include <hjoin/json_io.hpp>
#include <hjoin/sampling.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace {

using hjoin::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hjoin::parse_error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Io {
    std::string input_path;
    std::string inline_spec;
    std::string output_path;

    hjoin::ParsedInput load() const {
        if (!inline_spec.empty() && !input_path.empty())
            throw hjoin::parse_error("pass either --input or --inline, not both");
        if (!inline_spec.empty()) return hjoin::parse_inline(inline_spec);
        if (!input_path.empty()) return hjoin::parse_input_document(read_file(input_path));
        throw hjoin::parse_error("no input given: pass --input PATH or --inline STR");
    }

    void emit(const json& doc) const {
        const std::string text = doc.dump(2) + "\n";
        if (output_path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(output_path, std::ios::binary);
        if (!out) throw hjoin::error("cannot open output file: " + output_path);
        out << text;
    }
};

// Single graphs run through the p=1 join (0-vertex graphs through the empty
// join, which yields an empty spectrum and charpoly 1).
hjoin::JoinSpec as_join(const hjoin::ParsedInput& input) {
    if (std::holds_alternative<hjoin::JoinSpec>(input)) return std::get<hjoin::JoinSpec>(input);
    const hjoin::Graph& g = std::get<hjoin::Graph>(input);
    hjoin::JoinSpec spec;
    if (g.order() == 0) return spec;
    spec.h = hjoin::Graph(1);
    spec.components = {g};
    return spec;
}

const hjoin::Graph& as_graph(const hjoin::ParsedInput& input, const char* cmd) {
    if (!std::holds_alternative<hjoin::Graph>(input))
        throw hjoin::parse_error(std::string(cmd) + " expects a single graph input");
    return std::get<hjoin::Graph>(input);
}

void add_io(CLI::App* cmd, Io& io) {
    cmd->add_option("--input", io.input_path, "input file (JSON join spec / graph, or edge list)");
    cmd->add_option("--inline", io.inline_spec,
                    "inline spec: generator string or H[c1;c2;...], e.g. P3[K1,3;K2;P3]");
    cmd->add_option("--output", io.output_path, "write the JSON document here instead of stdout");
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

template <typename F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int run_verify(const Io& io, double tol, unsigned long long seed, unsigned trials,
               bool corrupt_assoc) {
    std::mt19937_64 rng(seed);
    std::function<void(hjoin::AssocMatrix&)> hook;
    if (corrupt_assoc)
        hook = [](hjoin::AssocMatrix& assoc) {
            if (assoc.size() > 0) assoc.m(0, assoc.size() - 1) += 1;
        };

    json failures = json::array();
    unsigned passed = 0;
    for (unsigned t = 0; t < trials; ++t) {
        const hjoin::JoinSpec spec = hjoin::random_join_spec(rng);
        const hjoin::VerifyReport rep = hjoin::verify_against_oracle(spec, tol, hook);
        std::ostringstream line;
        line << "trial " << t << ": " << (rep.pass() ? "PASS" : "FAIL");
        for (const auto& c : rep.checks) line << "  " << c.name << (c.pass ? "+" : "-");
        std::cerr << line.str() << "\n";
        if (rep.pass()) {
            ++passed;
        } else {
            std::cerr << "  failing spec (replayable): " << hjoin::joinspec_to_json(spec).dump()
                      << "\n";
            for (const auto& c : rep.checks)
                if (!c.pass) std::cerr << "  " << c.name << ": " << c.detail << "\n";
            failures.push_back(json{{"trial", t},
                                    {"spec", hjoin::joinspec_to_json(spec)},
                                    {"report", hjoin::report_to_json(rep)}});
        }
    }
    std::cerr << passed << "/" << trials << " trials passed\n";
    io.emit(json{{"trials", trials},
                 {"passed", passed},
                 {"pass", passed == trials},
                 {"seed", seed},
                 {"failures", failures}});
    return passed == trials ? 0 : 1;
}

int run_bench(const Io& io, double tol, unsigned long long seed, unsigned p, unsigned n,
              unsigned runs) {
    if (p < 3) throw hjoin::parse_error("bench: host cycle needs --p >= 3");
    std::mt19937_64 rng(seed);
    hjoin::JoinSpec spec;
    spec.h = hjoin::generator("C" + std::to_string(p));
    for (unsigned i = 0; i < p; ++i)
        spec.components.push_back(hjoin::random_circulant(rng, n));

    std::vector<double> formula_ms, oracle_ms;
    double checksum = 0.0;
    for (unsigned r = 0; r < runs; ++r) {
        formula_ms.push_back(time_ms([&] {
            const hjoin::Spectrum sp = hjoin::hjoin_spectrum(spec, tol);
            checksum += sp.entries.front().value;
        }));
        oracle_ms.push_back(time_ms([&] {
            const hjoin::Graph joined = hjoin::hjoin_explicit(spec);
            const hjoin::SymEigen se = hjoin::sym_eigen(hjoin::to_dense(hjoin::adjacency(joined)));
            const std::vector<double> vals(se.values.data(), se.values.data() + se.values.size());
            const hjoin::Spectrum sp = hjoin::group_multiset(vals, tol, vals.size());
            checksum += sp.entries.front().value;
        }));
        std::cerr << "run " << r << ": formula " << formula_ms.back() << " ms, oracle "
                  << oracle_ms.back() << " ms\n";
    }
    const double fm = median(formula_ms), om = median(oracle_ms);
    std::cerr << "median: formula " << fm << " ms, oracle " << om << " ms (checksum "
              << checksum << ")\n";
    io.emit(json{{"p", p},
                 {"n", n},
                 {"runs", runs},
                 {"seed", seed},
                 {"formula_ms", formula_ms},
                 {"oracle_ms", oracle_ms},
                 {"formula_median_ms", fm},
                 {"oracle_median_ms", om},
                 {"formula_faster", fm < om},
                 {"speedup", om / fm}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra, characteristic polynomials and eigenvectors of H-joins of graphs"};
    app.require_subcommand(1);

    Io io;
    double tol = hjoin::kDefaultTol;
    unsigned long long seed = 42;
    unsigned trials = 200;
    bool oracle = false;
    bool corrupt_assoc = false;
    unsigned bench_p = 8, bench_n = 64, bench_runs = 5;
    std::string lex_base;
    unsigned long long power = 1;

    auto* sp = app.add_subcommand("spectrum", "eigenvalues with multiplicities and origins");
    add_io(sp, io);
    sp->add_option("--tol", tol, "grouping/verification tolerance")->check(CLI::PositiveNumber);
    sp->add_flag("--oracle", oracle, "compute from the explicitly built join instead");

    auto* cp = app.add_subcommand("charpoly", "exact characteristic polynomial");
    add_io(cp, io);
    cp->add_flag("--oracle", oracle, "compute from the explicitly built join instead");

    auto* mp = app.add_subcommand("mainpoly", "main characteristic polynomial of a graph");
    add_io(mp, io);

    auto* wm = app.add_subcommand("walkmatrix", "walk matrix, walk counts and main coefficients");
    add_io(wm, io);

    auto* as = app.add_subcommand("assoc", "the join associated matrix, exactly");
    add_io(as, io);

    auto* ev = app.add_subcommand("eigvecs", "embedded and reconstructed eigenvectors");
    add_io(ev, io);
    ev->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);

    auto* lp = app.add_subcommand("lexpow", "spectrum of a lexicographic power");
    lp->add_option("base", lex_base, "base graph generator string, e.g. petersen");
    lp->add_option("k", power, "exponent");
    lp->add_option("--input", io.input_path, "base graph file (alternative to the positional)");
    lp->add_option("--power", power, "exponent (alternative to the positional)");
    lp->add_option("--output", io.output_path, "write the JSON document here instead of stdout");

    auto* vf = app.add_subcommand("verify", "differential check against the brute-force oracle");
    vf->add_option("--trials", trials, "number of random join specs");
    vf->add_option("--seed", seed, "random seed");
    vf->add_option("--tol", tol, "verification tolerance")->check(CLI::PositiveNumber);
    vf->add_option("--output", io.output_path, "write the JSON report here instead of stdout");
    vf->add_flag("--corrupt-assoc", corrupt_assoc)->group(""); // negative-control hook

    auto* bn = app.add_subcommand("bench", "formula path vs dense oracle wall clock");
    bn->add_option("--p", bench_p, "host cycle length");
    bn->add_option("--n", bench_n, "order of each circulant component");
    bn->add_option("--runs,--trials", bench_runs, "replications");
    bn->add_option("--seed", seed, "random seed");
    bn->add_option("--tol", tol, "grouping tolerance")->check(CLI::PositiveNumber);
    bn->add_option("--output", io.output_path, "write the JSON document here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sp->parsed()) {
            const auto input = io.load();
            const hjoin::JoinSpec spec = as_join(input);
            hjoin::Spectrum result;
            if (oracle) {
                const hjoin::Graph joined = hjoin::hjoin_explicit(spec);
                const hjoin::SymEigen se =
                    hjoin::sym_eigen(hjoin::to_dense(hjoin::adjacency(joined)));
                const std::vector<double> vals(se.values.data(),
                                               se.values.data() + se.values.size());
                result = hjoin::group_multiset(vals, tol, vals.size());
            } else {
                result = hjoin::hjoin_spectrum(spec, tol);
            }
            io.emit(hjoin::spectrum_to_json(result));
        } else if (cp->parsed()) {
            const auto input = io.load();
            const hjoin::JoinSpec spec = as_join(input);
            const hjoin::IntPoly poly =
                oracle ? hjoin::charpoly_exact(hjoin::adjacency(hjoin::hjoin_explicit(spec)))
                       : hjoin::hjoin_charpoly(spec);
            json doc = hjoin::poly_to_json(poly);
            doc["display"] = hjoin::poly_to_string(poly);
            io.emit(doc);
        } else if (mp->parsed()) {
            const auto input = io.load();
            const hjoin::WalkData wd = hjoin::walk_data(as_graph(input, "mainpoly"));
            json doc = hjoin::poly_to_json(hjoin::main_poly(wd));
            doc["display"] = hjoin::poly_to_string(hjoin::main_poly(wd));
            io.emit(doc);
        } else if (wm->parsed()) {
            const auto input = io.load();
            io.emit(hjoin::walkdata_to_json(hjoin::walk_data(as_graph(input, "walkmatrix"))));
        } else if (as->parsed()) {
            const auto input = io.load();
            io.emit(hjoin::assoc_to_json(hjoin::assoc_matrix(as_join(input))));
        } else if (ev->parsed()) {
            const auto input = io.load();
            io.emit(hjoin::eigvecs_to_json(hjoin::reconstruct_eigvecs(as_join(input), tol)));
        } else if (lp->parsed()) {
            hjoin::Graph base;
            if (!lex_base.empty())
                base = hjoin::generator(lex_base);
            else if (!io.input_path.empty())
                base = std::get<hjoin::Graph>(
                    hjoin::parse_input_document(read_file(io.input_path)));
            else
                throw hjoin::parse_error("lexpow: no base graph given");
            io.emit(hjoin::power_to_json(
                hjoin::lex_power_regular(base, static_cast<std::size_t>(power))));
        } else if (vf->parsed()) {
            return run_verify(io, tol, seed, trials, corrupt_assoc);
        } else if (bn->parsed()) {
            return run_bench(io, tol, seed, bench_p, bench_n, bench_runs);
        }
    } catch (const hjoin::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::bad_variant_access&) {
        std::cerr << "error: input kind does not match this command\n";
        return 2;
    } catch (const hjoin::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
