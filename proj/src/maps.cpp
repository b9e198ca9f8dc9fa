#include "opineq/maps.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace opineq {

namespace {

constexpr double kOrthogonalityTol = 1e-10;
constexpr double kUnitalTol = 1e-12;
constexpr double kTraceLinkRelTol = 1e-10;
constexpr double kDensityTraceTol = 1e-12;

double orthogonality_defect(const Matrix& u) {
    return (u.transpose() * u - Matrix::identity(u.cols())).frobenius_norm();
}

void require_orthogonal(const Matrix& u, const char* op) {
    if (u.rows() != u.cols()) throw UsageError(std::string(op) + ": U must be square");
    if (orthogonality_defect(u) > kOrthogonalityTol) {
        throw UsageError(std::string(op) + ": U is not orthogonal");
    }
}

void require_unit_p(double p, const char* op) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << op << ": p=" << p << " outside [0, 1]";
        throw UsageError(msg.str());
    }
}

void require_open_p(double p, const char* op) {
    if (!(p > 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << op << ": p=" << p << " outside (0, 1]";
        throw UsageError(msg.str());
    }
}

SymMatrix require_pd_image(const SymMatrix& image, const char* op, const char* which) {
    if (!is_pd(image)) {
        std::ostringstream msg;
        msg << op << ": Phi(" << which << ") is not positive definite (" << describe_matrix(image)
            << ")";
        throw DomainError(msg.str());
    }
    return image;
}

void require_unital(const PLinearMap& phi, const char* op) {
    if (!phi.is_unital()) {
        throw PreconditionError(std::string(op) + ": map " + phi.name() + " is not unital");
    }
}

struct WindowConstants {
    double lower;  // K^r(., 2) at the window endpoint minimizing K
    double upper;  // K^R(., 2) at the window endpoint maximizing K
};

WindowConstants window_constants(const OperatorPair& pair, double p, const char* op) {
    const auto w = pair.window();
    if (!w) throw PreconditionError(std::string(op) + ": pair carries no window relation");
    validate_window(w->h_lo, w->h_hi);
    const double k_lo = kantorovich2(w->h_lo);
    const double k_hi = kantorovich2(w->h_hi);
    const double r = std::min(p, 1.0 - p);
    const double big_r = std::max(p, 1.0 - p);
    return {std::pow(std::min(k_lo, k_hi), r), std::pow(std::max(k_lo, k_hi), big_r)};
}

ChainParams params_for(const SymMatrix& a, double p) { return {p, a.dim(), 0}; }

}  // namespace

// ---------------------------------------------------------------------------
// PLinearMap

PLinearMap PLinearMap::unitary(Matrix u) {
    require_orthogonal(u, "PLinearMap::unitary");
    return PLinearMap(map_kind::UnitaryConj{std::move(u)}, true);
}

PLinearMap PLinearMap::isometry(Matrix v) {
    if (v.cols() == 0 || v.cols() > v.rows()) {
        throw UsageError("PLinearMap::isometry: V must be n x k with 1 <= k <= n");
    }
    const SymMatrix gram(v.transpose() * v);
    if (!is_pd(gram)) throw UsageError("PLinearMap::isometry: V lacks full column rank");
    const bool unital = (gram - SymMatrix::identity(v.cols())).frobenius_norm() <= kUnitalTol;
    return PLinearMap(map_kind::IsometryConj{std::move(v)}, unital);
}

PLinearMap PLinearMap::pinching(std::size_t dim, std::vector<std::vector<std::size_t>> blocks) {
    std::vector<int> seen(dim, 0);
    for (const auto& block : blocks) {
        if (block.empty()) throw UsageError("PLinearMap::pinching: empty block");
        for (auto i : block) {
            if (i >= dim) throw UsageError("PLinearMap::pinching: index out of range");
            ++seen[i];
        }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
        throw UsageError("PLinearMap::pinching: blocks must partition {0, ..., dim-1}");
    }
    return PLinearMap(map_kind::Pinching{dim, std::move(blocks)}, true);
}

PLinearMap PLinearMap::normalized_trace() { return PLinearMap(map_kind::NormalizedTrace{}, true); }

PLinearMap PLinearMap::convex(std::vector<map_kind::ConvexTerm> terms) {
    if (terms.empty()) throw UsageError("PLinearMap::convex: no terms");
    double total = 0.0;
    for (const auto& t : terms) {
        if (!(t.weight > 0.0)) throw UsageError("PLinearMap::convex: weights must be positive");
        require_orthogonal(t.u, "PLinearMap::convex");
        if (t.u.rows() != terms.front().u.rows()) {
            throw UsageError("PLinearMap::convex: terms disagree on dimension");
        }
        total += t.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw UsageError("PLinearMap::convex: weights must sum to 1");
    return PLinearMap(map_kind::ConvexConj{std::move(terms)}, true);
}

std::string PLinearMap::name() const {
    struct Namer {
        std::string operator()(const map_kind::UnitaryConj&) const { return "unitary"; }
        std::string operator()(const map_kind::IsometryConj&) const { return "isometry"; }
        std::string operator()(const map_kind::Pinching&) const { return "pinching"; }
        std::string operator()(const map_kind::NormalizedTrace&) const { return "normalized_trace"; }
        std::string operator()(const map_kind::ConvexConj&) const { return "convex"; }
    };
    return std::visit(Namer{}, kind_);
}

SymMatrix PLinearMap::operator()(const SymMatrix& x) const {
    struct Apply {
        const SymMatrix& x;

        SymMatrix operator()(const map_kind::UnitaryConj& k) const { return congruence(k.u, x); }
        SymMatrix operator()(const map_kind::IsometryConj& k) const { return congruence(k.v, x); }
        SymMatrix operator()(const map_kind::Pinching& k) const {
            if (x.dim() != k.dim) throw UsageError("pinching: dimension mismatch");
            Matrix out(k.dim, k.dim);
            for (const auto& block : k.blocks)
                for (auto i : block)
                    for (auto j : block) out(i, j) = x(i, j);
            return SymMatrix(out);
        }
        SymMatrix operator()(const map_kind::NormalizedTrace&) const {
            if (x.dim() == 0) throw UsageError("normalized_trace: empty matrix");
            return SymMatrix::scalar(1, x.trace() / static_cast<double>(x.dim()));
        }
        SymMatrix operator()(const map_kind::ConvexConj& k) const {
            SymMatrix out(k.terms.front().u.cols());
            for (const auto& t : k.terms) out += t.weight * congruence(t.u, x);
            return out;
        }
    };
    return std::visit(Apply{x}, kind_);
}

SymMatrix apply_map(const PLinearMap& phi, const SymMatrix& x) { return phi(x); }

// ---------------------------------------------------------------------------
// TraceReport

double TraceLink::tol() const { return kTraceLinkRelTol * (1.0 + std::abs(lhs) + std::abs(rhs)); }

void TraceReport::add(std::string label, double lhs, double rhs) {
    links.push_back({std::move(label), lhs, rhs, rhs - lhs});
}

bool TraceReport::passed() const {
    return std::all_of(links.begin(), links.end(), [](const TraceLink& l) { return l.passed(); });
}

double TraceReport::worst_score() const {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& l : links) worst = std::min(worst, l.score());
    return worst;
}

const TraceLink& TraceReport::worst_link() const {
    return *std::min_element(links.begin(), links.end(), [](const TraceLink& a, const TraceLink& b) {
        return a.score() < b.score();
    });
}

// ---------------------------------------------------------------------------
// Young-type inequalities

TraceReport chain_young_scalar(double a, double b, double p) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("chain_young_scalar: a and b must be positive");
    require_unit_p(p, "chain_young_scalar");
    const double r = std::min(p, 1.0 - p);
    const double big_r = std::max(p, 1.0 - p);
    const double k = kantorovich2(b / a);
    const double geo = std::pow(a, 1.0 - p) * std::pow(b, p);
    const double arith = (1.0 - p) * a + p * b;
    const double sq = (std::sqrt(a) - std::sqrt(b)) * (std::sqrt(a) - std::sqrt(b));

    TraceReport report{"young_scalar", {}};
    report.add("K(h,2)^r a^(1-p) b^p <= (1-p)a+pb", std::pow(k, r) * geo, arith);
    report.add("(1-p)a+pb <= K(h,2)^R a^(1-p) b^p", arith, std::pow(k, big_r) * geo);
    report.add("r(sqrt a-sqrt b)^2 + a^(1-p) b^p <= (1-p)a+pb", r * sq + geo, arith);
    report.add("(1-p)a+pb <= R(sqrt a-sqrt b)^2 + a^(1-p) b^p", arith, big_r * sq + geo);
    return report;
}

ChainReport chain_prop31(const OperatorPair& pair, double p, const Tolerance& tol) {
    require_unit_p(p, "chain_prop31");
    const auto k = window_constants(pair, p, "chain_prop31");
    const auto geo = geom_mean(pair.a(), pair.b(), p);

    detail::ChainBuilder chain("prop31", tol);
    chain.add("K_lo^r A#_pB", k.lower * geo);
    chain.add("A nabla_p B", arith_mean(pair.a(), pair.b(), p));
    chain.add("K_hi^R A#_pB", k.upper * geo);
    chain.link_consecutive();
    return std::move(chain).finish(params_for(pair.a(), p));
}

OrderMargin check_ando(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b, double p,
                       const Tolerance& tol) {
    require_unit_p(p, "check_ando");
    const auto phi_a = require_pd_image(phi(a), "check_ando", "A");
    const auto phi_b = require_pd_image(phi(b), "check_ando", "B");
    return loewner_leq(phi(geom_mean(a, b, p)), geom_mean(phi_a, phi_b, p), tol);
}

ChainReport chain_cor32(const PLinearMap& phi, const OperatorPair& pair, double p,
                        const Tolerance& tol) {
    require_unit_p(p, "chain_cor32");
    const auto k = window_constants(pair, p, "chain_cor32");
    const auto phi_a = require_pd_image(phi(pair.a()), "chain_cor32", "A");
    const auto phi_b = require_pd_image(phi(pair.b()), "chain_cor32", "B");
    const auto phi_geo = phi(geom_mean(pair.a(), pair.b(), p));
    const auto phi_arith = phi(arith_mean(pair.a(), pair.b(), p));

    detail::ChainBuilder chain("cor32", tol);
    chain.add("(K_lo^r/K_hi^R) Phi(A#_pB)", (k.lower / k.upper) * phi_geo);
    chain.add("Phi(A nabla_p B)/K_hi^R", phi_arith / k.upper);
    chain.add("Phi(A)#_pPhi(B)", geom_mean(phi_a, phi_b, p));
    chain.add("Phi(A nabla_p B)/K_lo^r", phi_arith / k.lower);
    chain.add("(K_hi^R/K_lo^r) Phi(A#_pB)", (k.upper / k.lower) * phi_geo);
    chain.link_consecutive();
    return std::move(chain).finish(params_for(pair.a(), p));
}

OrderMargin check_reverse_ando(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b,
                               double p, double m, double M, const Tolerance& tol) {
    if (!(p > 0.0 && p < 1.0)) throw UsageError("check_reverse_ando: p must lie in (0, 1)");
    if (!(m > 0.0 && m < M)) throw UsageError("check_reverse_ando: need 0 < m < M");
    if (!loewner_leq(m * a, b, tol).passed || !loewner_leq(b, M * a, tol).passed) {
        throw PreconditionError("check_reverse_ando: hypothesis mA <= B <= MA does not hold");
    }
    const auto phi_a = require_pd_image(phi(a), "check_reverse_ando", "A");
    const auto phi_b = require_pd_image(phi(b), "check_reverse_ando", "B");
    const double k = gen_kantorovich(M / m, p);
    return loewner_leq(geom_mean(phi_a, phi_b, p), phi(geom_mean(a, b, p)) / k, tol);
}

OrderMargin check_monotonicity(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b,
                               double p, const Tolerance& tol) {
    require_open_p(p, "check_monotonicity");
    require_unital(phi, "check_monotonicity");
    const auto phi_a = require_pd_image(phi(a), "check_monotonicity", "A");
    const auto phi_b = require_pd_image(phi(b), "check_monotonicity", "B");
    return loewner_leq(phi(tsallis(a, b, PValue(p))), tsallis(phi_a, phi_b, PValue(p)), tol);
}

Thm34Terms thm34_terms(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b, double p) {
    require_open_p(p, "chain_thm34");
    require_unital(phi, "chain_thm34");
    const auto phi_a = require_pd_image(phi(a), "chain_thm34", "A");
    const auto phi_b = require_pd_image(phi(b), "chain_thm34", "B");
    const double r = std::min(p, 1.0 - p);
    const double big_r = std::max(p, 1.0 - p);

    const auto phi_mid_arith = phi(arith_mean(a, b, 0.5));
    Thm34Terms out;
    out.lower = (2.0 * r / p) * (phi_mid_arith - geom_mean(phi_a, phi_b, 0.5)) +
                tsallis(phi_a, phi_b, PValue(p));
    out.middle = phi(b - a);
    out.upper = (2.0 * big_r / p) * (phi_mid_arith - phi(geom_mean(a, b, 0.5))) +
                phi(tsallis(a, b, PValue(p)));
    return out;
}

ChainReport chain_thm34(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b, double p,
                        const Tolerance& tol) {
    auto terms = thm34_terms(phi, a, b, p);
    detail::ChainBuilder chain("thm34", tol);
    chain.add("(2r/p)(Phi(A nabla B)-Phi(A)#Phi(B))+T_p(Phi(A)|Phi(B))", std::move(terms.lower));
    chain.add("Phi(B-A)", std::move(terms.middle));
    chain.add("(2R/p)(Phi(A nabla B)-Phi(A#B))+Phi(T_p(A|B))", std::move(terms.upper));
    chain.link_consecutive();
    return std::move(chain).finish(params_for(a, p));
}

// ---------------------------------------------------------------------------
// Worked 2x2 example

SymMatrix example_a() { return SymMatrix{{2.0, -1.0}, {-1.0, 1.0}}; }
SymMatrix example_b() { return SymMatrix{{6.0, 2.0}, {2.0, 4.0}}; }

PLinearMap example_map() {
    const double s = std::sqrt(2.0) / 2.0;
    return PLinearMap::unitary(Matrix{{s, s}, {-s, s}});
}

ExampleResult reproduce_example(const Tolerance& tol) {
    const auto phi = example_map();
    const auto a = example_a();
    const auto b = example_b();
    const double p = kExampleP;

    auto terms = thm34_terms(phi, a, b, p);
    ExampleResult out{terms.lower, terms.middle, terms.upper, chain_thm34(phi, a, b, p, tol), {}};

    const auto phi_a = phi(a);
    const double r = std::min(p, 1.0 - p);
    out.literal_lower = (2.0 * r / p) * (phi(arith_mean(a, b, 0.5)) - geom_mean(phi_a, phi_a, 0.5)) +
                        tsallis(phi_a, phi_a, PValue(p));
    return out;
}

// ---------------------------------------------------------------------------
// Trace corollaries

TraceReport chain_trace54(const SymMatrix& a, const SymMatrix& b, double p) {
    require_open_p(p, "chain_trace54");
    const double d = tsallis_trace(a, b, p);
    const double neg_t = -tsallis(a, b, PValue(p)).trace();
    TraceReport report{"trace54", {}};
    report.add("Tr[A-B] <= D_p(A||B)", (a - b).trace(), d);
    report.add("D_p(A||B) <= -Tr[T_p(A|B)]", d, neg_t);
    return report;
}

TraceReport chain_cor_trace56(const SymMatrix& a, const SymMatrix& b, double p) {
    require_open_p(p, "chain_cor_trace56");
    const double r = std::min(p, 1.0 - p);
    const double big_r = std::max(p, 1.0 - p);
    const double ta = a.trace();
    const double tb = b.trace();
    const double half_sum = 0.5 * (ta + tb);
    const double tr_geo = geom_mean(a, b, 0.5).trace();
    const double tr_tp = tsallis(a, b, PValue(p)).trace();
    const double d = tsallis_trace(a, b, p);
    const double sqrt_ab = std::sqrt(ta * tb);
    const double trace_power = std::pow(ta, 1.0 - p) * std::pow(tb, p);

    TraceReport report{"cor_trace56", {}};
    report.add("(2R/p)(Tr[A#B]-Tr[A+B]/2)-Tr[T_p(A|B)] <= Tr[A-B]",
               2.0 * big_r / p * (tr_geo - half_sum) - tr_tp, ta - tb);
    report.add("Tr[A-B] <= (2r/p)(sqrt(Tr A Tr B)-Tr[A+B]/2)+D_p(A||B)", ta - tb,
               2.0 * r / p * (sqrt_ab - half_sum) + d);
    report.add("intermediate: (2r/p)(Tr[A+B]/2-sqrt(Tr A Tr B))+((Tr A)^(1-p)(Tr B)^p-Tr A)/p <= Tr[B-A]",
               2.0 * r / p * (half_sum - sqrt_ab) + (trace_power - ta) / p, tb - ta);
    report.add("intermediate: Tr[B-A] <= (2R/p)(Tr[A+B]/2-Tr[A#B])+Tr[T_p(A|B)]", tb - ta,
               2.0 * big_r / p * (half_sum - tr_geo) + tr_tp);
    return report;
}

TraceReport check_final_remark(const SymMatrix& a, const SymMatrix& b, double p) {
    require_open_p(p, "check_final_remark");
    if (std::abs(a.trace() - 1.0) > kDensityTraceTol || std::abs(b.trace() - 1.0) > kDensityTraceTol) {
        throw PreconditionError("check_final_remark: A and B must be density operators (unit trace)");
    }
    const PairCalculus calc(a, b);
    const double tr_tp = tsallis(calc, PValue(p)).trace();
    const double tr_thalf = tsallis(calc, PValue(0.5)).trace();

    TraceReport report{"final_remark", {}};
    report.add("0 <= D_p(A||B)", 0.0, tsallis_trace(a, b, p));
    if (p >= 0.5) report.add("Tr[T_1/2(A|B)] <= Tr[T_p(A|B)]", tr_thalf, tr_tp);
    if (p <= 0.5) {
        report.add("(1-p)Tr[T_1/2(A|B)]+(2p-1)Tr[B-A] <= p Tr[T_p(A|B)]",
                   (1.0 - p) * tr_thalf + (2.0 * p - 1.0) * (b - a).trace(), p * tr_tp);
    }
    return report;
}

}  // namespace opineq
