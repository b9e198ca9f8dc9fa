// opineq: command-line harness for the operator-inequality library.
//
//   opineq verify   randomized chain suite (exit 0 iff zero failures)
//   opineq example  2x2 worked example regression
//   opineq scalars  scalar Hermite-Hadamard / Young grids
//   opineq bounds   K, J, L, R, T, S and chain margins for a supplied pair
//   opineq gen      emit random matrices as JSON
//   opineq replay   re-run a single suite instance from its seed

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "opineq/bounds.hpp"
#include "opineq/harness.hpp"
#include "opineq/io.hpp"
#include "opineq/maps.hpp"
#include "opineq/means.hpp"

namespace {

using namespace opineq;
using nlohmann::json;

void print_chain(std::ostream& out, const ChainReport& report) {
    out << report.chain_id << ": " << (report.passed() ? "passed" : "FAILED") << "\n";
    for (const auto& l : report.links) {
        out << "  " << std::left << std::setw(48) << l.label << std::right << " lambda_min="
            << std::setw(13) << std::setprecision(6) << l.margin.lambda_min
            << "  tol=" << std::setprecision(3) << l.margin.tol_used
            << (l.margin.passed ? "" : "  <-- violated") << "\n";
    }
}

void print_trace(std::ostream& out, const TraceReport& report) {
    out << report.chain_id << ": " << (report.passed() ? "passed" : "FAILED") << "\n";
    for (const auto& l : report.links) {
        out << "  " << l.label << "\n      lhs=" << std::setprecision(10) << l.lhs
            << "  rhs=" << l.rhs << "  gap=" << std::setprecision(4) << l.gap
            << (l.passed() ? "" : "  <-- violated") << "\n";
    }
}

double max_entry_deviation(const SymMatrix& a, const SymMatrix& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

int run_verify(SuiteConfig config, const std::string& json_path) {
    const auto report = run_suite(config);
    io::print_report_table(std::cout, report);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw UsageError("cannot write '" + json_path + "'");
        out << io::report_document(report).dump(2) << "\n";
    }
    return report.clean() ? 0 : 1;
}

int run_example() {
    const auto result = reproduce_example();
    std::cout << "Phi(X) = U^T X U, U = [[s, s], [-s, s]], s = sqrt(2)/2\n"
              << "A = [[2, -1], [-1, 1]], B = [[6, 2], [2, 4]], p = 1/4\n\n";
    struct Row {
        const char* name;
        const SymMatrix& computed;
        const SymMatrix& printed;
    };
    const Row rows[] = {{"lower", result.lower, kExampleLowerPrinted},
                        {"middle Phi(B-A)", result.middle, kExampleMiddlePrinted},
                        {"upper", result.upper, kExampleUpperPrinted}};
    for (const auto& row : rows) {
        std::cout << row.name << ":\n";
        io::print_matrix(std::cout, row.computed);
        std::cout << "  max |computed - printed| = " << std::scientific << std::setprecision(3)
                  << max_entry_deviation(row.computed, row.printed) << std::defaultfloat << "\n";
    }
    std::cout << "lower with Phi(A) in place of Phi(B) (as typeset):\n";
    io::print_matrix(std::cout, result.literal_lower);
    std::cout << "  max |literal - printed lower| = " << std::scientific << std::setprecision(3)
              << max_entry_deviation(result.literal_lower, kExampleLowerPrinted)
              << std::defaultfloat << "\n\n";
    print_chain(std::cout, result.report);

    const bool middle_exact = max_entry_deviation(result.middle, kExampleMiddlePrinted) <= 1e-12;
    const bool ok = middle_exact && result.report.passed();
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_scalars() {
    bool ok = true;
    std::cout << std::setprecision(8);

    std::cout << "Hermite-Hadamard chain 1-1/x <= ... <= x-1 (x >= 1):\n";
    for (double x : {1.0, 1.5, 2.0, 4.0, 10.0, 100.0}) {
        for (double p : {0.1, 0.25, 0.5, 0.75, 1.0}) {
            const auto chain = hh_scalar_chain(x, p);
            ok = ok && chain.ordered();
            std::cout << "  x=" << std::setw(5) << x << " p=" << std::setw(4) << p << " :";
            for (const auto& v : chain.values) std::cout << " " << std::setw(11) << v.value;
            std::cout << (chain.ordered() ? "" : "  <-- not ordered") << "\n";
        }
    }

    std::cout << "\n(x-1)/sqrt(x) <= ((x+1)/2)^(p-1)(x-1), p in [1/2, 1]:\n";
    for (double x : {1.0, 2.0, 4.0, 9.0, 50.0}) {
        for (double p : {0.5, 0.75, 1.0}) {
            const auto v = scalar_prop21(x, p);
            const bool holds = v.lhs <= v.rhs + 1e-12;
            ok = ok && holds;
            std::cout << "  x=" << std::setw(4) << x << " p=" << std::setw(4) << p
                      << " : lhs=" << std::setw(11) << v.lhs << " rhs=" << std::setw(11) << v.rhs
                      << (holds ? "" : "  <-- violated") << "\n";
        }
    }

    std::cout << "\n((x^(p-1)+1)/2)(x-1) - 2(x-1)/(x+1) at p = 2/3 (sign changes):\n";
    for (double x : {0.01, 0.1}) {
        std::cout << "  x=" << x << " : " << scalar_nonordering_remark(x, 2.0 / 3.0) << "\n";
    }

    std::cout << "\nYoung refinements and reverses:\n";
    for (auto [a, b, p] : {std::tuple{1.0, 4.0, 0.5}, std::tuple{2.0, 0.3, 0.2},
                           std::tuple{0.5, 7.0, 0.9}, std::tuple{3.0, 3.0, 0.4}}) {
        const auto report = chain_young_scalar(a, b, p);
        ok = ok && report.passed();
        std::cout << "  a=" << a << " b=" << b << " p=" << p << " : "
                  << (report.passed() ? "ordered" : "VIOLATED") << " (worst gap "
                  << report.worst_link().gap << ")\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_bounds(const std::string& a_path, const std::string& b_path, double p) {
    auto warn = [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
    const auto a = io::read_matrix_file(a_path, warn);
    const auto b = io::read_matrix_file(b_path, warn);
    const PairCalculus calc(a, b);

    std::cout << "p = " << p << "\n";
    const std::pair<const char*, SymMatrix> quantities[] = {
        {"K_p", bound_K(calc, p)},          {"J_p", bound_J(calc, p)},
        {"L_p", bound_L(calc, p)},          {"R_p", bound_R(calc, p)},
        {"T_p", tsallis(calc, PValue(p))},  {"S", rel_entropy(a, b)}};
    for (const auto& [name, value] : quantities) {
        std::cout << name << ":\n";
        io::print_matrix(std::cout, value, 8);
    }
    std::cout << "\n";

    const OperatorPair pair(a, b);
    print_chain(std::cout, chain_eq39(pair, p));
    if (loewner_leq(a, b).passed) {
        print_chain(std::cout, chain_thm21(pair, p));
        print_chain(std::cout, chain_thm_LR(pair, p));
    } else {
        std::cout << "thm21, thm_LR: skipped (A <= B does not hold)\n";
    }
    if (loewner_leq(b, a).passed) {
        print_chain(std::cout, chain_cor21(pair, p));
    } else {
        std::cout << "cor21: skipped (A >= B does not hold)\n";
    }
    print_trace(std::cout, chain_trace54(a, b, p));
    print_trace(std::cout, chain_cor_trace56(a, b, p));
    return 0;
}

int run_gen(const std::string& kind, std::size_t dim, std::uint64_t seed,
            const std::vector<double>& window) {
    SplitMix64 rng(seed);
    const SpectrumRange range{};
    json out;
    if (kind == "pd") {
        out = io::matrix_to_json(gen_pd(dim, range, rng));
    } else if (kind == "density") {
        out = io::matrix_to_json(gen_density(dim, range, rng));
    } else if (kind == "leq") {
        const auto pair = gen_pair_leq(dim, range, rng);
        out = {{"A", io::matrix_to_json(pair.a())}, {"B", io::matrix_to_json(pair.b())}};
    } else if (kind == "window") {
        if (window.size() != 2) throw UsageError("gen --kind window needs --window LO HI");
        const auto pair = gen_pair_window(dim, window[0], window[1], range, rng);
        out = {{"A", io::matrix_to_json(pair.a())},
               {"B", io::matrix_to_json(pair.b())},
               {"window", window}};
    } else {
        throw UsageError("unknown --kind '" + kind + "'");
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_replay(const InstanceSpec& spec, const SuiteConfig& config) {
    const auto outcome = run_instance(spec, config);
    json out = io::instance_to_json(spec);
    out["applicable"] = outcome.applicable;
    out["passed"] = outcome.passed;
    out["score"] = outcome.score;
    out["margin"] = outcome.margin;
    out["worst_link"] = outcome.worst_link;
    out["error"] = outcome.error ? json(*outcome.error) : json(nullptr);
    std::cout << out.dump(2) << "\n";
    return outcome.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator mean / Tsallis entropy inequality verification harness"};
    app.require_subcommand(1);

    SuiteConfig config;
    std::string json_path;
    auto* verify = app.add_subcommand("verify", "Run the randomized chain suite");
    verify->add_option("--chains", config.chains, "Chain ids (comma separated)")->delimiter(',');
    verify->add_option("--trials", config.trials, "Trials per (dim, p) cell")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", config.master_seed, "Master seed");
    verify->add_option("--dims", config.dims, "Matrix dimensions")->delimiter(',');
    verify->add_option("--p-grid", config.p_grid, "p values in (0, 1]")->delimiter(',');
    verify->add_option("--tol-abs", config.tolerance.abs, "Absolute Loewner tolerance")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--tol-rel", config.tolerance.rel, "Relative Loewner tolerance")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--json", json_path, "Write the machine-readable report here");

    app.add_subcommand("example", "Reproduce the 2x2 worked example");
    app.add_subcommand("scalars", "Print the scalar inequality grids");

    std::string a_path, b_path;
    double bounds_p = 0.5;
    auto* bounds = app.add_subcommand("bounds", "Evaluate bounds and chains for a matrix pair");
    bounds->add_option("--a", a_path, "JSON file with A")->required()->check(CLI::ExistingFile);
    bounds->add_option("--b", b_path, "JSON file with B")->required()->check(CLI::ExistingFile);
    bounds->add_option("--p", bounds_p, "p in (0, 1]")->required();

    std::string gen_kind;
    std::size_t gen_dim = 2;
    std::uint64_t gen_seed = 0;
    std::vector<double> gen_window;
    auto* gen = app.add_subcommand("gen", "Emit random matrices as JSON");
    gen->add_option("--kind", gen_kind, "pd | leq | window | density")
        ->required()
        ->check(CLI::IsMember({"pd", "leq", "window", "density"}));
    gen->add_option("--dim", gen_dim, "Dimension")->required()->check(CLI::Range(1, 64));
    gen->add_option("--seed", gen_seed, "Seed")->required();
    gen->add_option("--window", gen_window, "Window LO HI")->expected(2);

    InstanceSpec replay_spec;
    SuiteConfig replay_config;
    auto* replay = app.add_subcommand("replay", "Re-run one suite instance");
    replay->add_option("--chain", replay_spec.chain_id, "Chain id")->required();
    replay->add_option("--seed", replay_spec.seed, "Instance seed")->required();
    replay->add_option("--dim", replay_spec.dim, "Dimension")->required();
    replay->add_option("--p", replay_spec.p, "p")->required();
    replay->add_option("--variant", replay_spec.variant, "Window / map selector");
    replay->add_option("--tol-abs", replay_config.tolerance.abs, "Absolute tolerance");
    replay->add_option("--tol-rel", replay_config.tolerance.rel, "Relative tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return run_verify(config, json_path);
        if (app.got_subcommand("example")) return run_example();
        if (app.got_subcommand("scalars")) return run_scalars();
        if (*bounds) return run_bounds(a_path, b_path, bounds_p);
        if (*gen) return run_gen(gen_kind, gen_dim, gen_seed, gen_window);
        if (*replay) return run_replay(replay_spec, replay_config);
    } catch (const opineq::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
