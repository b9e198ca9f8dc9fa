#include "opineq/means.hpp"

#include <sstream>

namespace opineq {

namespace {

void require_unit_interval(double p, const char* op) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << op << ": weight p=" << p << " outside [0, 1]";
        throw UsageError(msg.str());
    }
}

void require_pd(const SymMatrix& m, const char* op, const char* which) {
    if (!is_pd(m)) {
        std::ostringstream msg;
        msg << op << ": " << which << " is not positive definite (" << describe_matrix(m) << ")";
        throw DomainError(msg.str());
    }
}

}  // namespace

PValue::PValue(double p) : p_(p) {
    if (p == 0.0) {
        throw UsageError("PValue: p = 0 is the relative operator entropy limit; use rel_entropy");
    }
    if (!(std::abs(p) <= 1.0)) {
        std::ostringstream msg;
        msg << "PValue: |p| must be <= 1, got " << p;
        throw UsageError(msg.str());
    }
}

void validate_window(double h_lo, double h_hi) {
    if (!(h_lo > 0.0 && h_hi > 0.0 && h_lo <= h_hi)) {
        std::ostringstream msg;
        msg << "window (" << h_lo << ", " << h_hi << "): need 0 < h_lo <= h_hi";
        throw UsageError(msg.str());
    }
    if (!(h_lo > 1.0 || h_hi < 1.0)) {
        std::ostringstream msg;
        msg << "window (" << h_lo << ", " << h_hi << ") straddles 1";
        throw UsageError(msg.str());
    }
}

// ---------------------------------------------------------------------------

OperatorPair::OperatorPair(SymMatrix a, SymMatrix b, PairRelation rel, const Tolerance& tol)
    : a_(std::move(a)), b_(std::move(b)), rel_(rel) {
    if (a_.dim() != b_.dim()) throw UsageError("OperatorPair: dimension mismatch");
    require_pd(a_, "OperatorPair", "A");
    require_pd(b_, "OperatorPair", "B");

    if (a_leq_b() && !loewner_leq(a_, b_, tol).passed) {
        throw PreconditionError("OperatorPair: relation A <= B does not hold");
    }
    if (a_geq_b() && !loewner_leq(b_, a_, tol).passed) {
        throw PreconditionError("OperatorPair: relation A >= B does not hold");
    }
    if (const auto w = window()) {
        validate_window(w->h_lo, w->h_hi);
        const auto c = sym_eigenvalues(normalize(a_, b_));
        const double slack = tol.abs + tol.rel * std::max(w->h_hi, c.back());
        if (c.front() < w->h_lo - slack || c.back() > w->h_hi + slack) {
            std::ostringstream msg;
            msg << "OperatorPair: spectrum of A^-1/2 B A^-1/2 [" << c.front() << ", " << c.back()
                << "] is outside window [" << w->h_lo << ", " << w->h_hi << "]";
            throw PreconditionError(msg.str());
        }
    }
}

std::optional<relation::Window> OperatorPair::window() const {
    if (const auto* w = std::get_if<relation::Window>(&rel_)) return *w;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

PairCalculus::PairCalculus(const SymMatrix& a, const SymMatrix& b) : a_(a), b_(b) {
    if (a.dim() != b.dim()) throw UsageError("PairCalculus: dimension mismatch");
    const auto a_eig = sym_eig(a);
    if (!is_pd(a_eig)) {
        std::ostringstream msg;
        msg << "PairCalculus: A is not positive definite (min eigenvalue " << a_eig.min() << ")";
        throw DomainError(msg.str());
    }
    require_pd(b, "PairCalculus", "B");
    const auto half = frac_power(a_eig, 0.5);
    const auto inv_half = frac_power(a_eig, -0.5);
    const auto c_eig = sym_eig(SymMatrix(inv_half * (b * inv_half)));
    c_ = c_eig.eigenvalues;
    w_ = half * c_eig.eigenvectors;
}

SymMatrix PairCalculus::lift_values(const std::vector<double>& values) const {
    const std::size_t n = c_.size();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += w_(i, k) * values[k] * w_(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    return SymMatrix(out);
}

SymMatrix PairCalculus::natural_power(double r) const {
    if (r == 0.0) return a_;
    if (r == 1.0) return b_;
    return lift([r](double x) { return std::pow(x, r); });
}

// ---------------------------------------------------------------------------

SymMatrix arith_mean(const SymMatrix& a, const SymMatrix& b, double p) {
    require_unit_interval(p, "arith_mean");
    return (1.0 - p) * a + p * b;
}

SymMatrix geom_mean(const SymMatrix& a, const SymMatrix& b, double p) {
    require_unit_interval(p, "geom_mean");
    return PairCalculus(a, b).natural_power(p);
}

SymMatrix natural_power(const SymMatrix& a, const SymMatrix& b, double r) {
    return PairCalculus(a, b).natural_power(r);
}

SymMatrix rel_entropy(const SymMatrix& a, const SymMatrix& b) {
    return PairCalculus(a, b).lift([](double x) { return std::log(x); });
}

SymMatrix tsallis(const PairCalculus& pair, PValue p) {
    const double q = p.value();
    if (q == 1.0) return pair.b() - pair.a();
    return pair.lift([q](double x) { return scalar::tsallis(x, q); });
}

SymMatrix tsallis(const SymMatrix& a, const SymMatrix& b, PValue p) {
    return tsallis(PairCalculus(a, b), p);
}

double tsallis_trace(const SymMatrix& a, const SymMatrix& b, double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "tsallis_trace: p=" << p << " outside (0, 1]";
        throw UsageError(msg.str());
    }
    if (a.dim() != b.dim()) throw UsageError("tsallis_trace: dimension mismatch");
    require_pd(a, "tsallis_trace", "A");
    require_pd(b, "tsallis_trace", "B");
    const auto a_pow = frac_power(a, 1.0 - p);
    const auto b_pow = frac_power(b, p);
    // Tr[X Y] for symmetric X, Y is the entrywise inner product.
    double cross = 0.0;
    for (std::size_t k = 0; k < a_pow.data().size(); ++k) cross += a_pow.data()[k] * b_pow.data()[k];
    return (a.trace() - cross) / p;
}

double kantorovich2(double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        std::ostringstream msg;
        msg << "kantorovich2: h must be positive and finite, got " << h;
        throw DomainError(msg.str());
    }
    return (h + 1.0) * (h + 1.0) / (4.0 * h);
}

double gen_kantorovich(double h, double p) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        std::ostringstream msg;
        msg << "gen_kantorovich: h must be positive and finite, got " << h;
        throw DomainError(msg.str());
    }
    if (h == 1.0 || p == 0.0 || p == 1.0) {
        std::ostringstream msg;
        msg << "gen_kantorovich: K(h,p) is 0/0 at h=" << h << ", p=" << p
            << " (the limit value there is 1)";
        throw DomainError(msg.str());
    }
    const double hp = std::pow(h, p);
    const double lead = (hp - h) / ((p - 1.0) * (h - 1.0));
    const double inner = (p - 1.0) / p * (hp - 1.0) / (hp - h);
    return lead * std::pow(inner, p);
}

namespace scalar {

double tsallis(double x, double p) { return std::expm1(p * std::log(x)) / p; }

}  // namespace scalar

}  // namespace opineq
