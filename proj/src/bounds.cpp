#include "opineq/bounds.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace opineq {

namespace {

void require_p(double p, const char* op) {
    if (!(p > 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << op << ": p=" << p << " outside (0, 1]";
        throw UsageError(msg.str());
    }
}

double hh_lower(double x, double p) { return std::pow((x + 1.0) / 2.0, p - 1.0) * (x - 1.0); }
double hh_upper(double x, double p) { return (std::pow(x, p - 1.0) + 1.0) / 2.0 * (x - 1.0); }
double cubic_coef(double p) { return (p - 1.0) * (p - 2.0) / 24.0; }

ChainParams params_of(const OperatorPair& pair, double p) { return {p, pair.a().dim(), 0}; }

void require_leq(const OperatorPair& pair, const Tolerance& tol, const char* op) {
    if (pair.a_leq_b()) return;
    if (!loewner_leq(pair.a(), pair.b(), tol).passed) {
        throw PreconditionError(std::string(op) + ": hypothesis A <= B does not hold");
    }
}

void require_geq(const OperatorPair& pair, const Tolerance& tol, const char* op) {
    if (pair.a_geq_b()) return;
    if (!loewner_leq(pair.b(), pair.a(), tol).passed) {
        throw PreconditionError(std::string(op) + ": hypothesis A >= B does not hold");
    }
}

// Composite Simpson rule for t^{p-1} over [1, x].
double simpson_power_integral(double x, double p, int panels) {
    const double h = (x - 1.0) / panels;
    auto f = [p](double t) { return std::pow(t, p - 1.0); };
    double sum = f(1.0) + f(x);
    for (int k = 1; k < panels; ++k) sum += f(1.0 + k * h) * (k % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Reports

bool ChainReport::passed() const {
    return std::all_of(links.begin(), links.end(),
                       [](const ChainLink& l) { return l.margin.passed; });
}

double ChainReport::worst_score() const {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& l : links) worst = std::min(worst, l.margin.score());
    return worst;
}

const ChainLink& ChainReport::worst_link() const {
    return *std::min_element(links.begin(), links.end(), [](const ChainLink& a, const ChainLink& b) {
        return a.margin.score() < b.margin.score();
    });
}

bool ScalarChain::ordered(double slack) const {
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k].value < values[k - 1].value - slack) return false;
    }
    return true;
}

double ErrorBounds::max_violation() const {
    return std::max({0.0, mid_lo - mid_gap, mid_gap - mid_hi, trap_lo - trap_gap, trap_gap - trap_hi});
}

namespace detail {

std::size_t ChainBuilder::add(std::string name, SymMatrix value) {
    const double norm = spectral_norm(value);
    quantities_.push_back({std::move(name), std::move(value), norm});
    return quantities_.size() - 1;
}

void ChainBuilder::link(std::size_t lhs, std::size_t rhs) {
    const auto& x = quantities_.at(lhs);
    const auto& y = quantities_.at(rhs);
    report_.links.push_back(
        {x.name + " <= " + y.name, loewner_leq(x.value, x.norm, y.value, y.norm, tol_)});
}

void ChainBuilder::link_consecutive() {
    for (std::size_t k = 1; k < quantities_.size(); ++k) link(k - 1, k);
}

ChainReport ChainBuilder::finish(ChainParams params) && {
    report_.params = params;
    return std::move(report_);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalar chains

ScalarChain hh_scalar_chain(double x, double p) {
    if (!(x >= 1.0)) {
        throw UsageError("hh_scalar_chain: x < 1; use the reciprocal form (A >= B chain)");
    }
    require_p(p, "hh_scalar_chain");
    ScalarChain chain{x, p, {}};
    chain.values = {
        {"1-1/x", 1.0 - 1.0 / x},
        {"((x+1)/2)^(p-1)(x-1)", hh_lower(x, p)},
        {"(x^p-1)/p", scalar::tsallis(x, p)},
        {"((x^(p-1)+1)/2)(x-1)", hh_upper(x, p)},
        {"x-1", x - 1.0},
    };
    return chain;
}

Prop21Values scalar_prop21(double x, double p) {
    if (!(x >= 1.0)) throw UsageError("scalar_prop21: x must be >= 1");
    if (!(p >= 0.5 && p <= 1.0)) throw UsageError("scalar_prop21: p must lie in [1/2, 1]");
    return {(x - 1.0) / std::sqrt(x), hh_lower(x, p)};
}

double scalar_nonordering_remark(double x, double p) {
    if (!(x > 0.0)) throw DomainError("scalar_nonordering_remark: x must be > 0");
    if (x > 1.0) throw UsageError("scalar_nonordering_remark: x must be <= 1");
    return hh_upper(x, p) - 2.0 * (x - 1.0) / (x + 1.0);
}

ErrorBounds scalar_error_bounds(double x, double p) {
    if (!(x > 1.0)) throw UsageError("scalar_error_bounds: x must be > 1");
    require_p(p, "scalar_error_bounds");

    ErrorBounds out;
    // f''(t) = (p-1)(p-2) t^{p-3} is positive and decreasing on [1, x].
    out.M = (p - 1.0) * (p - 2.0);
    out.m = out.M * std::pow(x, p - 3.0);
    const double width2 = (x - 1.0) * (x - 1.0);
    out.mid_lo = out.m * width2 / 24.0;
    out.mid_hi = out.M * width2 / 24.0;
    out.trap_lo = out.m * width2 / 12.0;
    out.trap_hi = out.M * width2 / 12.0;

    const double mean = simpson_power_integral(x, p, 20000) / (x - 1.0);
    out.mid_gap = mean - std::pow((x + 1.0) / 2.0, p - 1.0);
    out.trap_gap = (1.0 + std::pow(x, p - 1.0)) / 2.0 - mean;
    return out;
}

// ---------------------------------------------------------------------------
// Operator bounds

SymMatrix bound_K(const PairCalculus& pair, double p) {
    require_p(p, "bound_K");
    return pair.lift([p](double x) { return hh_lower(x, p); });
}

SymMatrix bound_J(const PairCalculus& pair, double p) {
    require_p(p, "bound_J");
    return pair.lift([p](double x) { return 0.5 * (std::pow(x, p) - std::pow(x, p - 1.0) + x - 1.0); });
}

SymMatrix bound_L(const PairCalculus& pair, double p) {
    require_p(p, "bound_L");
    const double c = cubic_coef(p);
    // x^p - 3x^{p-1} + 3x^{p-2} - x^{p-3} = x^{p-3} (x-1)^3
    return pair.lift([p, c](double x) { return c * std::pow(x, p - 3.0) * std::pow(x - 1.0, 3); });
}

SymMatrix bound_R(const PairCalculus& pair, double p) {
    require_p(p, "bound_R");
    const double c = cubic_coef(p);
    // x^3 - 3x^2 + 3x - 1 = (x-1)^3
    return pair.lift([c](double x) { return c * std::pow(x - 1.0, 3); });
}

SymMatrix bound_K(const SymMatrix& a, const SymMatrix& b, double p) {
    return bound_K(PairCalculus(a, b), p);
}
SymMatrix bound_J(const SymMatrix& a, const SymMatrix& b, double p) {
    return bound_J(PairCalculus(a, b), p);
}
SymMatrix bound_L(const SymMatrix& a, const SymMatrix& b, double p) {
    return bound_L(PairCalculus(a, b), p);
}
SymMatrix bound_R(const SymMatrix& a, const SymMatrix& b, double p) {
    return bound_R(PairCalculus(a, b), p);
}

// ---------------------------------------------------------------------------
// Chains

ChainReport chain_eq39(const OperatorPair& pair, double p, const Tolerance& tol) {
    require_p(p, "chain_eq39");
    const PairCalculus calc(pair.a(), pair.b());
    detail::ChainBuilder chain("eq39", tol);
    chain.add("A-AB^-1A", calc.lift([](double x) { return 1.0 - 1.0 / x; }));
    chain.add("T_-p", tsallis(calc, PValue(-p)));
    chain.add("S", calc.lift([](double x) { return std::log(x); }));
    chain.add("T_p", tsallis(calc, PValue(p)));
    chain.add("B-A", pair.b() - pair.a());
    chain.link_consecutive();
    return std::move(chain).finish(params_of(pair, p));
}

ChainReport chain_thm21(const OperatorPair& pair, double p, const Tolerance& tol) {
    require_p(p, "chain_thm21");
    require_leq(pair, tol, "chain_thm21");
    const PairCalculus calc(pair.a(), pair.b());
    detail::ChainBuilder chain("thm21", tol);
    chain.add("0", SymMatrix(pair.a().dim()));
    chain.add("A-AB^-1A", calc.lift([](double x) { return 1.0 - 1.0 / x; }));
    chain.add("K_p", bound_K(calc, p));
    chain.add("T_p", tsallis(calc, PValue(p)));
    chain.add("J_p", bound_J(calc, p));
    chain.add("B-A", pair.b() - pair.a());
    chain.link_consecutive();
    return std::move(chain).finish(params_of(pair, p));
}

ChainReport chain_cor21(const OperatorPair& pair, double p, const Tolerance& tol) {
    require_p(p, "chain_cor21");
    require_geq(pair, tol, "chain_cor21");
    const PairCalculus calc(pair.a(), pair.b());
    detail::ChainBuilder chain("cor21", tol);
    chain.add("A#_pB-Anat_(p-1)B",
              calc.lift([p](double x) { return std::pow(x, p) - std::pow(x, p - 1.0); }));
    chain.add("J_p", bound_J(calc, p));
    chain.add("T_p", tsallis(calc, PValue(p)));
    chain.add("K_p", bound_K(calc, p));
    chain.add("Anat_(p+1)B-A#_pB",
              calc.lift([p](double x) { return std::pow(x, p + 1.0) - std::pow(x, p); }));
    chain.add("0", SymMatrix(pair.a().dim()));
    chain.link_consecutive();
    return std::move(chain).finish(params_of(pair, p));
}

ChainReport chain_thm_LR(const OperatorPair& pair, double p, const Tolerance& tol) {
    require_p(p, "chain_thm_LR");
    require_leq(pair, tol, "chain_thm_LR");
    const PairCalculus calc(pair.a(), pair.b());
    const auto k = bound_K(calc, p);
    const auto j = bound_J(calc, p);
    const auto l = bound_L(calc, p);
    const auto r = bound_R(calc, p);

    detail::ChainBuilder chain("thm_LR", tol);
    const auto t_idx = chain.add("T_p", tsallis(calc, PValue(p)));
    const auto lk = chain.add("L_p+K_p", l + k);
    const auto rk = chain.add("R_p+K_p", r + k);
    const auto j2r = chain.add("J_p-2R_p", j - 2.0 * r);
    const auto j2l = chain.add("J_p-2L_p", j - 2.0 * l);
    const auto k_idx = chain.add("K_p", k);
    const auto j_idx = chain.add("J_p", j);
    chain.link(lk, t_idx);
    chain.link(t_idx, rk);
    chain.link(j2r, t_idx);
    chain.link(t_idx, j2l);
    chain.link(k_idx, lk);
    chain.link(j2l, j_idx);
    return std::move(chain).finish(params_of(pair, p));
}

}  // namespace opineq
