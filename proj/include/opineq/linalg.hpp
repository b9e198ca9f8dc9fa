#pragma once

// Dense real-symmetric matrix arithmetic, Jacobi spectral decomposition,
// functional calculus and Loewner-order comparison.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "opineq/errors.hpp"

namespace opineq {

/// General dense rows x cols matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const { return data_; }

    Matrix transpose() const;
    double frobenius_norm() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Real symmetric n x n matrix. Symmetry is enforced at construction by
/// replacing M with (M + M^T) / 2; every entry must be finite.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}
    explicit SymMatrix(const Matrix& m);
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static SymMatrix identity(std::size_t n);
    static SymMatrix diagonal(std::span<const double> diag);
    static SymMatrix diagonal(std::initializer_list<double> diag);
    static SymMatrix scalar(std::size_t n, double value);

    std::size_t dim() const { return dim_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    std::span<const double> data() const { return data_; }

    Matrix to_matrix() const;

    double trace() const;
    double frobenius_norm() const;
    /// max |entry - entry^T| of the matrix this was built from; 0 for
    /// anything not constructed from a general Matrix.
    double source_asymmetry() const { return source_asymmetry_; }

    SymMatrix& operator+=(const SymMatrix& other);
    SymMatrix& operator-=(const SymMatrix& other);
    SymMatrix& operator*=(double s);

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }
    friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
    friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
    friend SymMatrix operator/(SymMatrix a, double s) { return a *= 1.0 / s; }

    friend Matrix operator*(const SymMatrix& a, const SymMatrix& b) {
        return a.to_matrix() * b.to_matrix();
    }
    friend Matrix operator*(const Matrix& a, const SymMatrix& b) { return a * b.to_matrix(); }
    friend Matrix operator*(const SymMatrix& a, const Matrix& b) { return a.to_matrix() * b; }

    bool operator==(const SymMatrix& o) const { return dim_ == o.dim_ && data_ == o.data_; }

private:
    std::size_t dim_ = 0;
    std::vector<double> data_;
    double source_asymmetry_ = 0.0;
};

/// Eigenvalues ascending; eigenvectors stored as the columns of an
/// orthogonal matrix.
struct SpectralDecomp {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;

    std::size_t dim() const { return eigenvalues.size(); }
    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-10;

    Tolerance() = default;
    Tolerance(double abs_tol, double rel_tol);
};

/// Numerical witness of X <= Y: smallest eigenvalue of Y - X against the
/// threshold tol.abs + tol.rel * max(|X|_2, |Y|_2).
struct OrderMargin {
    double lambda_min = 0.0;
    double tol_used = 0.0;
    bool passed = true;

    /// lambda_min / tol_used; the link fails iff this drops below -1.
    double score() const;
};

// Jacobi eigensolver controls.
inline constexpr double kJacobiOffDiagRelTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 100;
// M is positive definite iff lambda_min > kPdRelTol * (1 + |M|_2).
inline constexpr double kPdRelTol = 1e-12;

SpectralDecomp sym_eig(const SymMatrix& m);
/// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> sym_eigenvalues(const SymMatrix& m);

double spectral_norm(const SymMatrix& m);
double min_eigenvalue(const SymMatrix& m);
bool is_pd(const SymMatrix& m);
bool is_pd(const SpectralDecomp& eig);

/// V diag(values) V^T for the eigenvectors of `eig`.
SymMatrix reassemble(const SpectralDecomp& eig, std::span<const double> values);

std::string describe_matrix(const SymMatrix& m);

/// Functional calculus f(M) = V f(Lambda) V^T. Throws DomainError naming
/// the offending eigenvalue if f is non-finite there.
template <typename F>
SymMatrix apply_fn(const SpectralDecomp& eig, F&& f) {
    std::vector<double> values(eig.dim());
    for (std::size_t k = 0; k < eig.dim(); ++k) {
        const double lambda = eig.eigenvalues[k];
        values[k] = f(lambda);
        if (!std::isfinite(values[k])) {
            std::ostringstream msg;
            msg << "apply_fn: function undefined at eigenvalue " << lambda;
            throw DomainError(msg.str());
        }
    }
    return reassemble(eig, values);
}

template <typename F>
SymMatrix apply_fn(const SymMatrix& m, F&& f) {
    return apply_fn(sym_eig(m), std::forward<F>(f));
}

/// M^r. Integer r >= 0 is accepted for any symmetric M; otherwise M must be PD.
SymMatrix frac_power(const SymMatrix& m, double r);
SymMatrix frac_power(const SpectralDecomp& eig, double r);
SymMatrix matrix_log(const SymMatrix& m);
SymMatrix matrix_exp(const SymMatrix& m);

/// A^{1/2} X A^{1/2} for PD A.
SymMatrix sandwich(const SymMatrix& a, const SymMatrix& x);
/// A^{-1/2} B A^{-1/2} for PD A.
SymMatrix normalize(const SymMatrix& a, const SymMatrix& b);

/// V^T X V for a general (not necessarily square) V.
SymMatrix congruence(const Matrix& v, const SymMatrix& x);

OrderMargin loewner_leq(const SymMatrix& x, const SymMatrix& y, const Tolerance& tol = {});
/// Same as loewner_leq but reuses already-known spectral norms of X and Y.
OrderMargin loewner_leq(const SymMatrix& x, double norm_x, const SymMatrix& y, double norm_y,
                        const Tolerance& tol);

}  // namespace opineq
