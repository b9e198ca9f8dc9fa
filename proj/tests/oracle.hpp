#pragma once

// Test-only reference routines. None of these go through the Jacobi
// eigensolver or the functional calculus of the library.

#include <cmath>
#include <utility>

#include "opineq/linalg.hpp"

namespace oracle {

using opineq::Matrix;
using opineq::SymMatrix;

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
        worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
    return worst;
}

inline double frob_diff(const SymMatrix& a, const SymMatrix& b) { return (a - b).frobenius_norm(); }

/// Gauss-Jordan inverse with partial pivoting.
inline Matrix inverse(const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(pivot, j));
            std::swap(inv(col, j), inv(pivot, j));
        }
        const double d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= d;
            inv(col, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline SymMatrix inverse(const SymMatrix& m) { return SymMatrix(inverse(m.to_matrix())); }

/// Denman-Beavers iteration for the principal square root of a PD matrix.
inline SymMatrix sqrtm(const SymMatrix& m) {
    Matrix y = m.to_matrix();
    Matrix z = Matrix::identity(m.dim());
    for (int it = 0; it < 100; ++it) {
        Matrix y_next = 0.5 * (y + inverse(z));
        Matrix z_next = 0.5 * (z + inverse(y));
        const double change = (y_next - y).frobenius_norm();
        y = std::move(y_next);
        z = std::move(z_next);
        if (change <= 1e-15 * (1.0 + y.frobenius_norm())) break;
    }
    return SymMatrix(y);
}

/// exp(M) by scaling and squaring with a truncated Taylor series.
inline SymMatrix expm(const SymMatrix& m) {
    int squarings = 0;
    double norm = m.frobenius_norm();
    while (norm > 0.25) {
        norm /= 2.0;
        ++squarings;
    }
    const Matrix x = m.to_matrix() * std::pow(0.5, squarings);
    Matrix term = Matrix::identity(m.dim());
    Matrix sum = term;
    for (int k = 1; k <= 20; ++k) {
        term = (term * x) * (1.0 / k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return SymMatrix(sum);
}

/// A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}, all roots by Denman-Beavers.
inline SymMatrix geom_half(const SymMatrix& a, const SymMatrix& b) {
    const SymMatrix root = sqrtm(a);
    const SymMatrix inv_root = inverse(root);
    const SymMatrix c(inv_root * (b * inv_root));
    return SymMatrix(root * (sqrtm(c) * root));
}

/// ((1-p) A^{-1} + p B^{-1})^{-1}
inline SymMatrix harmonic(const SymMatrix& a, const SymMatrix& b, double p) {
    return inverse(SymMatrix((1.0 - p) * inverse(a).to_matrix() + p * inverse(b).to_matrix()));
}

/// Eigenvalues of a 2x2 symmetric matrix via the quadratic formula.
inline std::pair<double, double> eig2(const SymMatrix& m) {
    const double a = m(0, 0), b = m(0, 1), d = m(1, 1);
    const double mean = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    return {mean - rad, mean + rad};
}

/// Smallest eigenvalue by exhaustive minimization of the Rayleigh quotient
/// over a fine angular grid (2x2 only).
inline double min_rayleigh2(const SymMatrix& m, int steps = 200000) {
    double best = 1e300;
    for (int k = 0; k < steps; ++k) {
        const double t = M_PI * k / steps;
        const double c = std::cos(t), s = std::sin(t);
        best = std::min(best, c * c * m(0, 0) + 2 * c * s * m(0, 1) + s * s * m(1, 1));
    }
    return best;
}

}  // namespace oracle
