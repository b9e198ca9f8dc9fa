// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "opineq/bounds.hpp"
#include "opineq/harness.hpp"
#include "opineq/io.hpp"
#include "opineq/maps.hpp"

using namespace opineq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

struct Outcome {
    bool passed;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.passed) ++failures;
    std::cout << (out.passed ? "PASS" : "FAIL") << "  [" << id << "] " << title << " -- " << out.detail
              << std::endl;
}

std::string summarize(const SuiteReport& report) {
    std::ostringstream s;
    for (const auto& c : report.chains) {
        s << c.chain_id << " " << c.failures << "/" << c.instances_run;
        if (c.skipped) s << " (+" << c.skipped << " n/a)";
        if (c.infrastructure_failures) s << " infra=" << c.infrastructure_failures;
        s << "; ";
    }
    s << report.wall_time_s << " s";
    return s.str();
}

SuiteConfig config_for(std::vector<std::string> chains, std::size_t trials) {
    SuiteConfig cfg;
    cfg.chains = std::move(chains);
    cfg.trials = trials;
    return cfg;
}

// Midpoint rule with 10^6 nodes for the mean of t^{p-1} on [1, x].
double midpoint_mean(double x, double p) {
    constexpr int kNodes = 1'000'000;
    const double h = (x - 1.0) / kNodes;
    double sum = 0.0;
    for (int k = 0; k < kNodes; ++k) sum += std::pow(1.0 + (k + 0.5) * h, p - 1.0);
    return sum * h / (x - 1.0);
}

double close(double got, double want) { return std::abs(got - want) / (1.0 + std::abs(want)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main() {
    std::cout << std::setprecision(6);

    criterion(1, "worked 2x2 example", [] {
        const auto start = Clock::now();
        const auto ex = reproduce_example();
        const double t = seconds_since(start);
        const double d_mid = max_abs_diff(ex.middle, kExampleMiddlePrinted);
        const double d_lo = max_abs_diff(ex.lower, kExampleLowerPrinted);
        const double d_hi = max_abs_diff(ex.upper, kExampleUpperPrinted);
        std::ostringstream s;
        s << "middle dev " << d_mid << ", lower dev " << d_lo << ", upper dev " << d_hi
          << ", chain " << (ex.report.passed() ? "holds" : "violated") << ", " << t << " s";
        return Outcome{d_mid <= 1e-12 && d_lo <= 5e-3 && d_hi <= 5e-3 && ex.report.passed() && t < 0.1,
                       s.str()};
    });

    criterion(2, "non-ordering remark values", [] {
        const double v1 = scalar_nonordering_remark(0.01, 2.0 / 3.0);
        const double v2 = scalar_nonordering_remark(0.1, 2.0 / 3.0);
        std::ostringstream s;
        s << std::setprecision(9) << "x=0.01: " << v1 << ", x=0.1: " << v2;
        return Outcome{std::abs(v1 - -0.83219) <= 1e-5 && std::abs(v2 - 0.216868) <= 1e-5, s.str()};
    });

    // Shared with criterion 5.
    SuiteReport order_report;
    criterion(3, "order chains, default config, seed 42", [&] {
        order_report = run_suite(config_for({"eq39", "thm21", "cor21", "thm_LR"}, 1000));
        const bool all_ran = [&] {
            for (const auto& c : order_report.chains)
                if (c.instances_run != 100000) return false;
            return true;
        }();
        return Outcome{order_report.clean() && all_ran && order_report.wall_time_s < 60.0,
                       summarize(order_report)};
    });

    criterion(4, "Young / Ando / monotonicity / trace chains", [] {
        const auto start = Clock::now();
        std::vector<SuiteReport> reports;
        // 1000 x 20 p x 5 dims = 10^5 scalar triples.
        reports.push_back(run_suite(config_for({"young_scalar"}, 1000)));
        // 2000 pairs alternating between the two windows: 1000 per window.
        reports.push_back(run_suite(config_for({"prop31", "cor32"}, 20)));
        // 500 instances cycling through the five map kinds.
        reports.push_back(run_suite(config_for({"ando", "reverse_ando", "monotonicity", "thm34"}, 5)));
        reports.push_back(run_suite(config_for({"trace54", "cor_trace56"}, 10)));
        auto densities = config_for({"final_remark"}, 200);
        densities.p_grid = {0.25, 0.5, 0.75};
        reports.push_back(run_suite(densities));
        const double t = seconds_since(start);

        bool ok = t < 120.0;
        std::ostringstream s;
        for (const auto& r : reports) {
            ok = ok && r.clean();
            s << summarize(r) << " | ";
        }
        s << "total " << t << " s";
        return Outcome{ok, s.str()};
    });

    criterion(5, "tightness links on every thm21 / thm_LR instance", [&] {
        if (order_report.chains.empty()) return Outcome{false, "order-chain suite did not run"};
        const std::pair<const char*, const char*> links[] = {
            {"thm21", "A-AB^-1A <= K_p"},
            {"thm21", "J_p <= B-A"},
            {"thm_LR", "K_p <= L_p+K_p"},
            {"thm_LR", "J_p-2L_p <= J_p"},
        };
        bool ok = true;
        std::ostringstream s;
        for (const auto& [chain, label] : links) {
            const auto& stats = order_report.chain(chain);
            const auto it = stats.link_failures.find(label);
            const auto n = it == stats.link_failures.end() ? 0 : it->second;
            ok = ok && n == 0 && stats.infrastructure_failures == 0 && stats.instances_run > 0;
            s << chain << " '" << label << "' " << n << "/" << stats.instances_run << "; ";
        }
        return Outcome{ok, s.str()};
    });

    criterion(6, "quadrature error brackets vs 10^6-node midpoint oracle", [] {
        double worst_violation = 0.0;
        double worst_gap_diff = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double x = 1.0 + 0.5 * i;
            for (int k = 1; k <= 20; ++k) {
                const double p = k / 20.0;
                const auto b = scalar_error_bounds(x, p);
                const double mean = midpoint_mean(x, p);
                const double mid_gap = mean - std::pow((x + 1.0) / 2.0, p - 1.0);
                const double trap_gap = (1.0 + std::pow(x, p - 1.0)) / 2.0 - mean;
                // Brackets rebuilt from f''(t) = (p-1)(p-2) t^{p-3} on [1, x].
                const double big = (p - 1.0) * (p - 2.0);
                const double small = big * std::pow(x, p - 3.0);
                const double w2 = (x - 1.0) * (x - 1.0);
                worst_violation = std::max({worst_violation, small * w2 / 24.0 - mid_gap,
                                            mid_gap - big * w2 / 24.0, small * w2 / 12.0 - trap_gap,
                                            trap_gap - big * w2 / 12.0, b.mid_lo - mid_gap,
                                            mid_gap - b.mid_hi, b.trap_lo - trap_gap, trap_gap - b.trap_hi});
                worst_gap_diff = std::max({worst_gap_diff, std::abs(b.mid_gap - mid_gap),
                                           std::abs(b.trap_gap - trap_gap)});
            }
        }
        std::ostringstream s;
        s << "max bracket violation " << worst_violation << ", library vs oracle gap diff "
          << worst_gap_diff;
        return Outcome{worst_violation <= 1e-8 && worst_gap_diff <= 1e-8, s.str()};
    });

    criterion(7, "diagonal inputs match entrywise scalar formulas", [] {
        SplitMix64 rng(20240601);
        double worst = 0.0;
        std::string worst_what;
        auto track = [&](double err, const char* what) {
            if (err > worst) {
                worst = err;
                worst_what = what;
            }
        };
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n = 1 + rng.below(6);
            std::vector<double> av(n), bv(n);
            for (std::size_t i = 0; i < n; ++i) {
                av[i] = rng.uniform(0.1, 10.0);
                bv[i] = rng.uniform(0.1, 10.0);
            }
            const double p = 0.05 * (1 + rng.below(20));
            const auto a = SymMatrix::diagonal(av);
            const auto b = SymMatrix::diagonal(bv);
            const PairCalculus calc(a, b);
            const double c = (p - 1.0) * (p - 2.0) / 24.0;

            struct Case {
                const char* what;
                SymMatrix value;
                std::function<double(double, double)> f;
            };
            const Case cases[] = {
                {"S", rel_entropy(a, b), [](double x, double y) { return x * std::log(y / x); }},
                {"T_p", tsallis(calc, PValue(p)),
                 [p](double x, double y) { return (std::pow(x, 1 - p) * std::pow(y, p) - x) / p; }},
                {"T_-p", tsallis(calc, PValue(-p)),
                 [p](double x, double y) { return (std::pow(x, 1 + p) * std::pow(y, -p) - x) / -p; }},
                {"A#_pB", geom_mean(a, b, p),
                 [p](double x, double y) { return std::pow(x, 1 - p) * std::pow(y, p); }},
                {"A-AB^-1A", calc.lift([](double t) { return 1.0 - 1.0 / t; }),
                 [](double x, double y) { return x - x * x / y; }},
                {"K_p", bound_K(calc, p),
                 [p](double x, double y) { return std::pow((x + y) / 2, p - 1) * std::pow(x, 1 - p) * (y - x); }},
                {"J_p", bound_J(calc, p),
                 [p](double x, double y) {
                     return 0.5 * (std::pow(x, 1 - p) * std::pow(y, p) - std::pow(x, 2 - p) * std::pow(y, p - 1) + y - x);
                 }},
                {"L_p", bound_L(calc, p),
                 [p, c](double x, double y) { return c * std::pow(y, p - 3) * std::pow(x, 1 - p) * std::pow(y - x, 3); }},
                {"R_p", bound_R(calc, p),
                 [c](double x, double y) { return c * std::pow(y - x, 3) / (x * x); }},
            };
            for (const auto& cs : cases) {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        const double want = i == j ? cs.f(av[i], bv[i]) : 0.0;
                        track(close(cs.value(i, j), want), cs.what);
                    }
            }
            double d_want = 0.0;
            for (std::size_t i = 0; i < n; ++i) d_want += av[i] - std::pow(av[i], 1 - p) * std::pow(bv[i], p);
            track(close(tsallis_trace(a, b, p), d_want / p), "D_p");
        }
        std::ostringstream s;
        s << "1000 cases, worst relative deviation " << worst << (worst_what.empty() ? "" : " (" + worst_what + ")");
        return Outcome{worst <= 1e-12, s.str()};
    });

    criterion(8, "verify --seed 7 --json is byte-identical across runs", [] {
        const std::string cli = OPINEQ_CLI_PATH;
        std::string bodies[2];
        for (int run = 0; run < 2; ++run) {
            const std::string path = "acceptance_verify_" + std::to_string(run) + ".json";
            const std::string cmd = "\"" + cli + "\" verify --seed 7 --json " + path + " > /dev/null";
            const int rc = std::system(cmd.c_str());
            if (rc != 0) return Outcome{false, "verify exited with status " + std::to_string(rc)};
            const auto doc = nlohmann::json::parse(read_file(path));
            bodies[run] = doc.at("report").dump();
            std::remove(path.c_str());
        }
        std::ostringstream s;
        s << "report bodies of " << bodies[0].size() << " bytes "
          << (bodies[0] == bodies[1] ? "identical" : "differ");
        return Outcome{!bodies[0].empty() && bodies[0] == bodies[1], s.str()};
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
