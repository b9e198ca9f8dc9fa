#pragma once

// Positive linear maps and the Young / Ando / information-monotonicity
// inequalities built on them, plus their trace corollaries.

#include <string>
#include <variant>
#include <vector>

#include "opineq/bounds.hpp"
#include "opineq/linalg.hpp"
#include "opineq/means.hpp"

namespace opineq {

namespace map_kind {
/// X -> U^T X U, U orthogonal.
struct UnitaryConj {
    Matrix u;
};
/// X -> V^T X V for an n x k matrix V of full column rank. Unital iff V^T V = I.
struct IsometryConj {
    Matrix v;
};
/// Zeroes every entry whose indices lie in different blocks of a partition.
struct Pinching {
    std::size_t dim;
    std::vector<std::vector<std::size_t>> blocks;
};
/// X -> [Tr X / n] (1 x 1).
struct NormalizedTrace {};
struct ConvexTerm {
    double weight;
    Matrix u;
};
/// X -> sum_i w_i U_i^T X U_i, w_i > 0, sum w_i = 1.
struct ConvexConj {
    std::vector<ConvexTerm> terms;
};
}  // namespace map_kind

/// Descriptor of a positive linear map. Construct through the named factories,
/// which validate the descriptor.
class PLinearMap {
public:
    using Kind = std::variant<map_kind::UnitaryConj, map_kind::IsometryConj, map_kind::Pinching,
                              map_kind::NormalizedTrace, map_kind::ConvexConj>;

    static PLinearMap unitary(Matrix u);
    static PLinearMap isometry(Matrix v);
    static PLinearMap pinching(std::size_t dim, std::vector<std::vector<std::size_t>> blocks);
    static PLinearMap normalized_trace();
    static PLinearMap convex(std::vector<map_kind::ConvexTerm> terms);

    const Kind& kind() const { return kind_; }
    std::string name() const;
    /// Phi(I) = I up to 1e-12 (Frobenius).
    bool is_unital() const { return unital_; }

    SymMatrix operator()(const SymMatrix& x) const;

private:
    explicit PLinearMap(Kind kind, bool unital) : kind_(std::move(kind)), unital_(unital) {}

    Kind kind_;
    bool unital_;
};

SymMatrix apply_map(const PLinearMap& phi, const SymMatrix& x);

struct TraceLink {
    std::string label;
    double lhs;
    double rhs;
    double gap;  // rhs - lhs

    double tol() const;
    bool passed() const { return gap >= -tol(); }
    double score() const { return gap / tol(); }
};

/// Scalar (trace-level) inequality report; lhs <= rhs per link.
struct TraceReport {
    std::string chain_id;
    std::vector<TraceLink> links;

    void add(std::string label, double lhs, double rhs);
    bool passed() const;
    double worst_score() const;
    const TraceLink& worst_link() const;
};

/// Kantorovich refinement/reverse and the Kittaneh-Manasrah bounds of the
/// scalar Young inequality.
TraceReport chain_young_scalar(double a, double b, double p);

/// K^r A#_pB <= A nabla_p B <= K^R A#_pB with K taken as the min / max of
/// K(., 2) over the window endpoints.
ChainReport chain_prop31(const OperatorPair& pair, double p, const Tolerance& tol = {});

/// Phi(A #_p B) <= Phi(A) #_p Phi(B).
OrderMargin check_ando(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b, double p,
                       const Tolerance& tol = {});

/// Four-link Ando sandwich with Kantorovich-scaled arithmetic means.
ChainReport chain_cor32(const PLinearMap& phi, const OperatorPair& pair, double p,
                        const Tolerance& tol = {});

/// Phi(A) #_p Phi(B) <= Phi(A #_p B) / K(M/m, p) given mA <= B <= MA.
OrderMargin check_reverse_ando(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b,
                               double p, double m, double M, const Tolerance& tol = {});

/// Phi(T_p(A|B)) <= T_p(Phi(A)|Phi(B)) for unital Phi.
OrderMargin check_monotonicity(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b,
                               double p, const Tolerance& tol = {});

struct Thm34Terms {
    SymMatrix lower;
    SymMatrix middle;
    SymMatrix upper;
};
/// Lower / middle / upper operators of the normalized-map counterpart of
/// information monotonicity.
Thm34Terms thm34_terms(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b, double p);
ChainReport chain_thm34(const PLinearMap& phi, const SymMatrix& a, const SymMatrix& b, double p,
                        const Tolerance& tol = {});

struct ExampleResult {
    SymMatrix lower;
    SymMatrix middle;
    SymMatrix upper;
    ChainReport report;
    /// Lower bound evaluated with Phi(A) in place of Phi(B), as the worked
    /// example's displayed formula is typeset.
    SymMatrix literal_lower;
};

/// Printed values of the 2x2 worked example.
inline const SymMatrix kExampleLowerPrinted{{0.486, 0.443}, {0.443, 5.638}};
inline const SymMatrix kExampleMiddlePrinted{{0.5, 0.5}, {0.5, 6.5}};
inline const SymMatrix kExampleUpperPrinted{{0.562, 0.951}, {0.951, 13.521}};

SymMatrix example_a();
SymMatrix example_b();
PLinearMap example_map();
inline constexpr double kExampleP = 0.25;

ExampleResult reproduce_example(const Tolerance& tol = {});

/// Tr[A-B] <= D_p(A||B) <= -Tr[T_p(A|B)].
TraceReport chain_trace54(const SymMatrix& a, const SymMatrix& b, double p);
/// Trace consequence: two links of the main bound followed by the two links of
/// the intermediate normalized-trace form (labels prefixed "intermediate").
TraceReport chain_cor_trace56(const SymMatrix& a, const SymMatrix& b, double p);
/// Consequences for density operators: D_p >= 0 always, plus the
/// T_{1/2} comparison appropriate to p.
TraceReport check_final_remark(const SymMatrix& a, const SymMatrix& b, double p);

}  // namespace opineq
