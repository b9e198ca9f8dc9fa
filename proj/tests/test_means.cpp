#include "doctest.h"

#include <cmath>

#include "opineq/harness.hpp"
#include "opineq/means.hpp"
#include "oracle.hpp"

using namespace opineq;

namespace {

double rel_err(const SymMatrix& got, const SymMatrix& want) {
    return oracle::frob_diff(got, want) / (1.0 + want.frobenius_norm());
}

struct RandomPair {
    SymMatrix a;
    SymMatrix b;
};

RandomPair random_pair(std::size_t n, SplitMix64& rng) {
    return {gen_pd(n, {0.1, 10.0}, rng), gen_pd(n, {0.1, 10.0}, rng)};
}

}  // namespace

TEST_CASE("PValue domain") {
    CHECK(PValue(0.5).value() == 0.5);
    CHECK(PValue(-1.0).value() == -1.0);
    CHECK(PValue(1.0).value() == 1.0);
    CHECK_THROWS_AS(PValue(0.0), UsageError);
    CHECK_THROWS_AS(PValue(1.5), UsageError);
    CHECK_THROWS_AS(PValue(-1.01), UsageError);
    CHECK_THROWS_AS(PValue(NAN), UsageError);
}

TEST_CASE("window validation") {
    CHECK_NOTHROW(validate_window(1.5, 4.0));
    CHECK_NOTHROW(validate_window(0.2, 0.8));
    CHECK_NOTHROW(validate_window(2.0, 2.0));
    CHECK_THROWS_AS(validate_window(0.5, 2.0), UsageError);
    CHECK_THROWS_AS(validate_window(1.0, 2.0), UsageError);
    CHECK_THROWS_AS(validate_window(3.0, 2.0), UsageError);
    CHECK_THROWS_AS(validate_window(0.0, 0.5), UsageError);
}

TEST_CASE("OperatorPair checks its hypotheses") {
    const auto i2 = SymMatrix::identity(2);
    CHECK_NOTHROW(OperatorPair(i2, 2.0 * i2, relation::ALeqB{}));
    CHECK_NOTHROW(OperatorPair(i2, i2, relation::ALeqB{}));
    CHECK_THROWS_AS(OperatorPair(2.0 * i2, i2, relation::ALeqB{}), PreconditionError);
    CHECK_THROWS_AS(OperatorPair(i2, 2.0 * i2, relation::AGeqB{}), PreconditionError);
    CHECK_NOTHROW(OperatorPair(i2, 3.0 * i2, relation::Window{1.5, 4.0}));
    CHECK_THROWS_AS(OperatorPair(i2, 5.0 * i2, relation::Window{1.5, 4.0}), PreconditionError);
    CHECK_THROWS_AS(OperatorPair(i2, 3.0 * i2, relation::Window{0.5, 4.0}), UsageError);
    CHECK_THROWS_AS(OperatorPair(SymMatrix::diagonal({1.0, 0.0}), i2), DomainError);
    CHECK_THROWS_AS(OperatorPair(i2, SymMatrix::diagonal({1.0, -1.0})), DomainError);
    CHECK_THROWS_AS(OperatorPair(i2, SymMatrix::identity(3)), UsageError);
    const OperatorPair w(i2, 3.0 * i2, relation::Window{1.5, 4.0});
    REQUIRE(w.window());
    CHECK(w.window()->h_hi == 4.0);
    CHECK_FALSE(OperatorPair(i2, i2).window());
}

TEST_CASE("weighted means on commuting inputs reduce to scalars") {
    const auto a = SymMatrix::diagonal({1.0, 4.0, 9.0});
    const auto b = SymMatrix::diagonal({4.0, 1.0, 9.0});
    const auto g = geom_mean(a, b, 0.5);
    CHECK(oracle::max_abs_diff(g, SymMatrix::diagonal({2.0, 2.0, 9.0})) <= 1e-14);
    CHECK(oracle::max_abs_diff(arith_mean(a, b, 0.25), SymMatrix::diagonal({1.75, 3.25, 9.0})) == 0.0);
    const auto n2 = natural_power(a, b, 2.0);
    CHECK(oracle::max_abs_diff(n2, SymMatrix::diagonal({16.0, 0.25, 9.0})) <= 1e-13);
    CHECK_THROWS_AS(geom_mean(a, b, 1.5), UsageError);
    CHECK_THROWS_AS(arith_mean(a, b, -0.1), UsageError);
}

TEST_CASE("endpoint natural powers are exact") {
    SplitMix64 rng(1);
    const auto [a, b] = random_pair(4, rng);
    CHECK(geom_mean(a, b, 0.0) == a);
    CHECK(geom_mean(a, b, 1.0) == b);
    CHECK(natural_power(a, b, 0.0) == a);
    CHECK(natural_power(a, b, 1.0) == b);
}

TEST_CASE("geometric mean against independent square-root iterations") {
    SplitMix64 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const auto [a, b] = random_pair(1 + trial % 6, rng);
        const auto half = oracle::geom_half(a, b);
        CHECK(rel_err(geom_mean(a, b, 0.5), half) <= 1e-10);
        // Midpoint property pins down the quarter and three-quarter weights.
        CHECK(rel_err(geom_mean(a, b, 0.25), oracle::geom_half(a, half)) <= 1e-10);
        CHECK(rel_err(geom_mean(a, b, 0.75), oracle::geom_half(half, b)) <= 1e-10);
        // Riccati characterization X A^{-1} X = B.
        const Matrix x = half.to_matrix();
        const SymMatrix riccati(x * (oracle::inverse(a) * x));
        CHECK(rel_err(riccati, b) <= 1e-10);
        // Symmetry A # B = B # A.
        CHECK(rel_err(geom_mean(b, a, 0.5), half) <= 1e-10);
    }
}

TEST_CASE("natural powers at integer exponents match inverse-based formulas") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto [a, b] = random_pair(1 + trial % 6, rng);
        const SymMatrix bab(b * (oracle::inverse(a) * b));
        CHECK(rel_err(natural_power(a, b, 2.0), bab) <= 1e-10);
        const SymMatrix aba(a * (oracle::inverse(b) * a));
        CHECK(rel_err(natural_power(a, b, -1.0), aba) <= 1e-10);
    }
}

TEST_CASE("harmonic <= geometric <= arithmetic") {
    SplitMix64 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        const auto [a, b] = random_pair(1 + trial % 6, rng);
        const double p = rng.uniform();
        const auto g = geom_mean(a, b, p);
        CHECK(loewner_leq(oracle::harmonic(a, b, p), g).passed);
        CHECK(loewner_leq(g, arith_mean(a, b, p)).passed);
    }
}

TEST_CASE("relative operator entropy") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const auto [a, b] = random_pair(n, rng);
        const auto s = rel_entropy(a, b);
        // exp(A^{-1/2} S A^{-1/2}) = A^{-1/2} B A^{-1/2}
        const auto inv_root = oracle::inverse(oracle::sqrtm(a));
        const SymMatrix inner(inv_root * (s * inv_root));
        const SymMatrix c(inv_root * (b * inv_root));
        CHECK(rel_err(oracle::expm(inner), c) <= 1e-9);
        CHECK(rel_entropy(a, a).frobenius_norm() <= 1e-12 * (1.0 + a.frobenius_norm()));
    }
    const auto a = SymMatrix::diagonal({1.0, 2.0});
    const auto b = SymMatrix::diagonal({std::exp(1.0), 2.0 * std::exp(-2.0)});
    CHECK(oracle::max_abs_diff(rel_entropy(a, b), SymMatrix::diagonal({1.0, -4.0})) <= 1e-14);
}

TEST_CASE("Tsallis relative operator entropy") {
    SUBCASE("1x1 reduces to the scalar formula") {
        SplitMix64 rng(6);
        for (int trial = 0; trial < 200; ++trial) {
            const double a = rng.uniform(0.1, 10.0);
            const double b = rng.uniform(0.1, 10.0);
            const double p = rng.uniform(-1.0, 1.0);
            if (p == 0.0) continue;
            const double want = a * (std::pow(b / a, p) - 1.0) / p;
            const double got = tsallis(SymMatrix{{a}}, SymMatrix{{b}}, PValue(p))(0, 0);
            CHECK(got == doctest::Approx(want).epsilon(1e-12).scale(1.0));
        }
    }
    SUBCASE("p = 1 is B - A, and T_p(A|A) = 0") {
        SplitMix64 rng(7);
        const auto [a, b] = random_pair(4, rng);
        CHECK(tsallis(a, b, PValue(1.0)) == b - a);
        CHECK(tsallis(a, a, PValue(0.3)).frobenius_norm() <= 1e-12 * (1.0 + a.frobenius_norm()));
    }
    SUBCASE("definition through the natural power") {
        SplitMix64 rng(8);
        for (int trial = 0; trial < 100; ++trial) {
            const auto [a, b] = random_pair(1 + trial % 6, rng);
            const auto t = tsallis(a, b, PValue(0.5));
            CHECK(rel_err(t, (oracle::geom_half(a, b) - a) / 0.5) <= 1e-10);
            const SymMatrix aba(a * (oracle::inverse(b) * a));
            CHECK(rel_err(tsallis(a, b, PValue(-1.0)), (aba - a) / -1.0) <= 1e-10);
        }
    }
    SUBCASE("p -> 0 approaches the relative operator entropy") {
        SplitMix64 rng(9);
        for (int trial = 0; trial < 100; ++trial) {
            const auto [a, b] = random_pair(1 + trial % 6, rng);
            const auto s = rel_entropy(a, b);
            const auto t = tsallis(a, b, PValue(1e-5));
            CHECK(rel_err(t, s) <= 1e-3);
            const auto t_neg = tsallis(a, b, PValue(-1e-5));
            CHECK(rel_err(t_neg, s) <= 1e-3);
        }
    }
    SUBCASE("T_{-p} <= S <= T_p") {
        SplitMix64 rng(10);
        for (int trial = 0; trial < 300; ++trial) {
            const auto [a, b] = random_pair(1 + trial % 6, rng);
            const double p = rng.uniform(0.01, 1.0);
            const auto s = rel_entropy(a, b);
            CHECK(loewner_leq(tsallis(a, b, PValue(-p)), s).passed);
            CHECK(loewner_leq(s, tsallis(a, b, PValue(p))).passed);
        }
    }
    SUBCASE("PairCalculus route agrees with the direct route") {
        SplitMix64 rng(11);
        const auto [a, b] = random_pair(5, rng);
        const PairCalculus calc(a, b);
        CHECK(tsallis(calc, PValue(0.3)) == tsallis(a, b, PValue(0.3)));
    }
}

TEST_CASE("PairCalculus") {
    CHECK_THROWS_AS(PairCalculus(SymMatrix::diagonal({1.0, 0.0}), SymMatrix::identity(2)), DomainError);
    CHECK_THROWS_AS(PairCalculus(SymMatrix::identity(2), SymMatrix::diagonal({1.0, 0.0})), DomainError);
    CHECK_THROWS_AS(PairCalculus(SymMatrix::identity(2), SymMatrix::identity(3)), UsageError);
    const PairCalculus calc(SymMatrix::identity(2), SymMatrix::diagonal({3.0, 2.0}));
    CHECK(calc.normalized_spectrum()[0] == doctest::Approx(2.0));
    CHECK(calc.normalized_spectrum()[1] == doctest::Approx(3.0));
    CHECK_THROWS_AS(calc.lift([](double x) { return std::log(x - 2.5); }), DomainError);
}

TEST_CASE("tsallis_trace") {
    const auto a = SymMatrix::diagonal({0.2, 0.8});
    const auto b = SymMatrix::diagonal({0.5, 0.5});
    for (double p : {0.1, 0.5, 0.9, 1.0}) {
        const double want =
            (1.0 - std::pow(0.2, 1 - p) * std::pow(0.5, p) - std::pow(0.8, 1 - p) * std::pow(0.5, p)) / p;
        CHECK(tsallis_trace(a, b, p) == doctest::Approx(want).epsilon(1e-13));
    }
    SplitMix64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        const auto [x, y] = random_pair(1 + trial % 6, rng);
        const Matrix prod = oracle::sqrtm(x) * oracle::sqrtm(y);
        double tr = 0.0;
        for (std::size_t i = 0; i < x.dim(); ++i) tr += prod(i, i);
        CHECK(tsallis_trace(x, y, 0.5) == doctest::Approx((x.trace() - tr) / 0.5).epsilon(1e-10));
    }
    CHECK_THROWS_AS(tsallis_trace(a, b, 0.0), UsageError);
    CHECK_THROWS_AS(tsallis_trace(a, b, -0.5), UsageError);
    CHECK_THROWS_AS(tsallis_trace(a, SymMatrix::identity(3), 0.5), UsageError);
    CHECK_THROWS_AS(tsallis_trace(a, SymMatrix::diagonal({1.0, 0.0}), 0.5), DomainError);
}

TEST_CASE("Kantorovich constants") {
    CHECK(kantorovich2(1.0) == 1.0);
    CHECK(kantorovich2(4.0) == doctest::Approx(25.0 / 16.0).epsilon(1e-15));
    CHECK(kantorovich2(0.25) == doctest::Approx(kantorovich2(4.0)).epsilon(1e-15));
    CHECK_THROWS_AS(kantorovich2(0.0), DomainError);
    CHECK_THROWS_AS(kantorovich2(-2.0), DomainError);

    CHECK(gen_kantorovich(4.0, 0.5) == doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-14));
    for (double h : {0.1, 0.5, 2.0, 7.0}) {
        for (double p : {0.2, 0.5, 0.8}) {
            const double k = gen_kantorovich(h, p);
            CHECK(k > 0.0);
            CHECK(k <= 1.0);
            CHECK(gen_kantorovich(1.0 / h, p) == doctest::Approx(k).epsilon(1e-12));
        }
    }
    // Continuous extension to 1 at h = 1.
    CHECK(gen_kantorovich(1.0 + 1e-6, 0.5) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(gen_kantorovich(1.0, 0.5), DomainError);
    CHECK_THROWS_AS(gen_kantorovich(2.0, 0.0), DomainError);
    CHECK_THROWS_AS(gen_kantorovich(2.0, 1.0), DomainError);
    CHECK_THROWS_AS(gen_kantorovich(-2.0, 0.5), DomainError);
}

TEST_CASE("scalar tsallis is accurate for tiny p") {
    CHECK(scalar::tsallis(std::exp(1.0), 1e-12) == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(scalar::tsallis(4.0, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(scalar::tsallis(4.0, -0.5) == doctest::Approx(1.0).epsilon(1e-15));
}
