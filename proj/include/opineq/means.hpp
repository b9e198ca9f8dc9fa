#pragma once

// Weighted operator means, natural powers, relative operator entropy,
// Tsallis relative operator entropy and Kantorovich constants.

#include <optional>
#include <variant>

#include "opineq/linalg.hpp"

namespace opineq {

/// Tsallis exponent: p in [-1, 1] with p != 0.
class PValue {
public:
    explicit PValue(double p);
    double value() const { return p_; }

private:
    double p_;
};

namespace relation {
struct None {};
struct ALeqB {};
struct AGeqB {};
/// h_lo I <= A^{-1/2} B A^{-1/2} <= h_hi I with the whole window on one
/// side of 1.
struct Window {
    double h_lo;
    double h_hi;
};
}  // namespace relation

using PairRelation =
    std::variant<relation::None, relation::ALeqB, relation::AGeqB, relation::Window>;

/// Validates a window (0 < h_lo <= h_hi, entirely above or below 1).
void validate_window(double h_lo, double h_hi);

/// A pair of PD operators with an optional order or window relation that is
/// checked on construction.
class OperatorPair {
public:
    OperatorPair(SymMatrix a, SymMatrix b, PairRelation rel = relation::None{},
                 const Tolerance& tol = {});

    const SymMatrix& a() const { return a_; }
    const SymMatrix& b() const { return b_; }
    const PairRelation& relation() const { return rel_; }
    std::optional<relation::Window> window() const;

    bool a_leq_b() const { return std::holds_alternative<relation::ALeqB>(rel_); }
    bool a_geq_b() const { return std::holds_alternative<relation::AGeqB>(rel_); }

private:
    SymMatrix a_;
    SymMatrix b_;
    PairRelation rel_;
};

/// Cached factorization of a PD pair: W = A^{1/2} V where C = A^{-1/2} B A^{-1/2}
/// = V diag(c) V^T. Every quantity A^{1/2} g(C) A^{1/2} is then
/// sum_k g(c_k) w_k w_k^T.
class PairCalculus {
public:
    PairCalculus(const SymMatrix& a, const SymMatrix& b);

    std::size_t dim() const { return a_.dim(); }
    const SymMatrix& a() const { return a_; }
    const SymMatrix& b() const { return b_; }
    /// Spectrum of A^{-1/2} B A^{-1/2}, ascending.
    const std::vector<double>& normalized_spectrum() const { return c_; }

    template <typename G>
    SymMatrix lift(G&& g) const {
        std::vector<double> values(c_.size());
        for (std::size_t k = 0; k < c_.size(); ++k) {
            values[k] = g(c_[k]);
            if (!std::isfinite(values[k])) {
                throw DomainError("PairCalculus::lift: function undefined on spectrum of A^-1/2 B A^-1/2");
            }
        }
        return lift_values(values);
    }

    /// A natural_r B.
    SymMatrix natural_power(double r) const;

private:
    SymMatrix lift_values(const std::vector<double>& values) const;

    SymMatrix a_;
    SymMatrix b_;
    std::vector<double> c_;
    Matrix w_;
};

/// (1-p) A + p B, p in [0, 1].
SymMatrix arith_mean(const SymMatrix& a, const SymMatrix& b, double p);
/// A #_p B, p in [0, 1].
SymMatrix geom_mean(const SymMatrix& a, const SymMatrix& b, double p);
/// A natural_r B for any real r.
SymMatrix natural_power(const SymMatrix& a, const SymMatrix& b, double r);
/// S(A|B) = A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}.
SymMatrix rel_entropy(const SymMatrix& a, const SymMatrix& b);
/// T_p(A|B) = (A natural_p B - A) / p. Negative p is accepted.
SymMatrix tsallis(const SymMatrix& a, const SymMatrix& b, PValue p);
SymMatrix tsallis(const PairCalculus& pair, PValue p);
/// D_p(A||B) = (Tr A - Tr[A^{1-p} B^p]) / p, p in (0, 1].
double tsallis_trace(const SymMatrix& a, const SymMatrix& b, double p);

/// K(h,2) = (h+1)^2 / (4h).
double kantorovich2(double h);
/// Generalized Kantorovich constant K(h,p); undefined (0/0) at h = 1 and at
/// p in {0, 1}, where its limit is 1.
double gen_kantorovich(double h, double p);

namespace scalar {
/// (x^p - 1) / p, accurate for small |p|.
double tsallis(double x, double p);
}  // namespace scalar

}  // namespace opineq
