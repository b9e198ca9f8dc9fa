#pragma once

// Hermite-Hadamard type bounds for the Tsallis relative operator entropy:
// scalar chains, the operator bounds K_p, J_p, L_p, R_p, and Loewner-order
// chain checks built from them.

#include <cstdint>
#include <string>
#include <vector>

#include "opineq/linalg.hpp"
#include "opineq/means.hpp"

namespace opineq {

struct ChainLink {
    std::string label;
    OrderMargin margin;
};

struct ChainParams {
    double p = 0.0;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
};

/// Ordered per-link Loewner margins for one inequality chain.
struct ChainReport {
    std::string chain_id;
    std::vector<ChainLink> links;
    ChainParams params;

    bool passed() const;
    /// Smallest link score (lambda_min / tol_used); below -1 means failure.
    double worst_score() const;
    /// Link achieving worst_score().
    const ChainLink& worst_link() const;
};

struct ScalarValue {
    std::string label;
    double value;
};

struct ScalarChain {
    double x = 0.0;
    double p = 0.0;
    std::vector<ScalarValue> values;

    /// Non-decreasing up to `slack`.
    bool ordered(double slack = 1e-12) const;
};

/// [1-1/x, ((x+1)/2)^{p-1}(x-1), (x^p-1)/p, ((x^{p-1}+1)/2)(x-1), x-1] for x >= 1.
ScalarChain hh_scalar_chain(double x, double p);

struct Prop21Values {
    double lhs;  // (x-1)/sqrt(x)
    double rhs;  // ((x+1)/2)^{p-1}(x-1)
};
/// x >= 1, p in [1/2, 1].
Prop21Values scalar_prop21(double x, double p);

/// ((x^{p-1}+1)/2)(x-1) - 2(x-1)/(x+1) for 0 < x <= 1.
double scalar_nonordering_remark(double x, double p);

/// Error brackets for f(t) = t^{p-1} on [1, x]: m <= f'' <= M, and the
/// midpoint / trapezoid gaps of the mean value against
/// m(x-1)^2/24..M(x-1)^2/24 and m(x-1)^2/12..M(x-1)^2/12.
struct ErrorBounds {
    double m = 0.0;
    double M = 0.0;
    double mid_lo = 0.0;
    double mid_hi = 0.0;
    double trap_lo = 0.0;
    double trap_hi = 0.0;
    /// Gaps from composite Simpson quadrature of f over [1, x].
    double mid_gap = 0.0;
    double trap_gap = 0.0;

    /// Largest amount by which either gap leaves its bracket (0 if inside).
    double max_violation() const;
};
ErrorBounds scalar_error_bounds(double x, double p);

// Operator bounds, p in (0, 1]. C = A^{-1/2} B A^{-1/2}.

/// A^{1/2} ((C+I)/2)^{p-1} (C-I) A^{1/2}
SymMatrix bound_K(const PairCalculus& pair, double p);
/// (A #_p B - A natural_{p-1} B + B - A) / 2
SymMatrix bound_J(const PairCalculus& pair, double p);
/// (p-1)(p-2)/24 (A #_p B - 3 A nat_{p-1} B + 3 A nat_{p-2} B - A nat_{p-3} B)
SymMatrix bound_L(const PairCalculus& pair, double p);
/// (p-1)(p-2)/24 (A nat_3 B - 3 A nat_2 B + 3B - A)
SymMatrix bound_R(const PairCalculus& pair, double p);

SymMatrix bound_K(const SymMatrix& a, const SymMatrix& b, double p);
SymMatrix bound_J(const SymMatrix& a, const SymMatrix& b, double p);
SymMatrix bound_L(const SymMatrix& a, const SymMatrix& b, double p);
SymMatrix bound_R(const SymMatrix& a, const SymMatrix& b, double p);

/// A - A B^{-1} A <= T_{-p} <= S <= T_p <= B - A, any PD pair.
ChainReport chain_eq39(const OperatorPair& pair, double p, const Tolerance& tol = {});
/// 0 <= A - A B^{-1} A <= K_p <= T_p <= J_p <= B - A, needs A <= B.
ChainReport chain_thm21(const OperatorPair& pair, double p, const Tolerance& tol = {});
/// A#_pB - A nat_{p-1} B <= J_p <= T_p <= K_p <= A nat_{p+1} B - A#_pB <= 0, needs A >= B.
ChainReport chain_cor21(const OperatorPair& pair, double p, const Tolerance& tol = {});
/// L+K <= T <= R+K, J-2R <= T <= J-2L, plus K <= L+K and J-2L <= J; needs A <= B.
ChainReport chain_thm_LR(const OperatorPair& pair, double p, const Tolerance& tol = {});

namespace detail {

/// Accumulates Loewner links, computing each operand's spectral norm once.
class ChainBuilder {
public:
    ChainBuilder(std::string chain_id, const Tolerance& tol) : tol_(tol) {
        report_.chain_id = std::move(chain_id);
    }

    /// Registers a named quantity and returns its index.
    std::size_t add(std::string name, SymMatrix value);
    /// Adds the link quantities[lhs] <= quantities[rhs].
    void link(std::size_t lhs, std::size_t rhs);
    /// Links consecutive quantities in registration order.
    void link_consecutive();

    ChainReport finish(ChainParams params) &&;

private:
    struct Quantity {
        std::string name;
        SymMatrix value;
        double norm;
    };
    Tolerance tol_;
    std::vector<Quantity> quantities_;
    ChainReport report_;
};

}  // namespace detail

}  // namespace opineq
