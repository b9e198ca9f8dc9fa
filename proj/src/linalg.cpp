#include "opineq/linalg.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <numeric>

namespace opineq {

namespace {

void require_finite(std::span<const double> data, const char* where) {
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw DomainError(std::string(where) + ": matrix entry is not finite");
        }
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << op << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
            << "x" << b.cols();
        throw UsageError(msg.str());
    }
}

void require_same_dim(const SymMatrix& a, const SymMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << op << ": dimension mismatch " << a.dim() << " vs " << b.dim();
        throw UsageError(msg.str());
    }
}

bool is_integer(double r) { return std::floor(r) == r; }

// Cyclic Jacobi on a dense copy of m. When `vectors` is non-null the
// accumulated rotations are written there (columns = eigenvectors).
std::vector<double> jacobi(const SymMatrix& m, Matrix* vectors) {
    const std::size_t n = m.dim();
    std::vector<double> a(m.data().begin(), m.data().end());
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

    if (vectors) *vectors = Matrix::identity(n);

    const double threshold = kJacobiOffDiagRelTol * m.frobenius_norm();
    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += at(i, j) * at(i, j);
        return std::sqrt(s);
    };

    bool converged = false;
    for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
        if (off_diagonal() <= threshold) {
            converged = true;
            break;
        }
        if (sweep == kJacobiMaxSweeps) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                at(p, p) -= t * apq;
                at(q, q) += t * apq;
                at(p, q) = at(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = at(r, p);
                    const double arq = at(r, q);
                    at(r, p) = at(p, r) = c * arp - s * arq;
                    at(r, q) = at(q, r) = s * arp + c * arq;
                }
                if (vectors) {
                    Matrix& v = *vectors;
                    for (std::size_t r = 0; r < n; ++r) {
                        const double vrp = v(r, p);
                        const double vrq = v(r, q);
                        v(r, p) = c * vrp - s * vrq;
                        v(r, q) = s * vrp + c * vrq;
                    }
                }
            }
        }
    }
    if (!converged) {
        std::ostringstream msg;
        msg << "sym_eig: Jacobi iteration did not converge in " << kJacobiMaxSweeps
            << " sweeps (dim=" << n << ", |M|_F=" << m.frobenius_norm() << ")";
        throw ConvergenceError(msg.str());
    }

    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
    return diag;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw UsageError("Matrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_same_shape(*this, other, "Matrix +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_same_shape(*this, other, "Matrix -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "Matrix *: inner dimension mismatch " << a.cols() << " vs " << b.rows();
        throw UsageError(msg.str());
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(const Matrix& m) : dim_(m.rows()), data_(m.rows() * m.rows()) {
    if (m.rows() != m.cols()) {
        std::ostringstream msg;
        msg << "SymMatrix: matrix is not square (" << m.rows() << "x" << m.cols() << ")";
        throw UsageError(msg.str());
    }
    require_finite(m.data(), "SymMatrix");
    for (std::size_t i = 0; i < dim_; ++i) {
        data_[i * dim_ + i] = m(i, i);
        for (std::size_t j = i + 1; j < dim_; ++j) {
            source_asymmetry_ = std::max(source_asymmetry_, std::abs(m(i, j) - m(j, i)));
            const double v = 0.5 * (m(i, j) + m(j, i));
            data_[i * dim_ + j] = v;
            data_[j * dim_ + i] = v;
        }
    }
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(Matrix(rows)) {}

SymMatrix SymMatrix::identity(std::size_t n) { return scalar(n, 1.0); }

SymMatrix SymMatrix::scalar(std::size_t n, double value) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = value;
    return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
    require_finite(diag, "SymMatrix::diagonal");
    const std::size_t n = diag.size();
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = diag[i];
    return m;
}

SymMatrix SymMatrix::diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

Matrix SymMatrix::to_matrix() const {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i];
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
    require_same_dim(*this, other, "SymMatrix +");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
    require_same_dim(*this, other, "SymMatrix -");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

// ---------------------------------------------------------------------------
// Tolerance / OrderMargin

Tolerance::Tolerance(double abs_tol, double rel_tol) : abs(abs_tol), rel(rel_tol) {
    if (!(abs >= 0.0) || !(rel >= 0.0)) throw UsageError("Tolerance: abs and rel must be >= 0");
}

double OrderMargin::score() const {
    if (tol_used > 0.0) return lambda_min / tol_used;
    if (lambda_min >= 0.0) return 0.0;
    return -std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Spectral routines

SpectralDecomp sym_eig(const SymMatrix& m) {
    const std::size_t n = m.dim();
    Matrix v;
    std::vector<double> diag = jacobi(m, &v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return diag[i] < diag[j]; });

    SpectralDecomp out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> sym_eigenvalues(const SymMatrix& m) {
    std::vector<double> diag = jacobi(m, nullptr);
    std::sort(diag.begin(), diag.end());
    return diag;
}

double spectral_norm(const SymMatrix& m) {
    if (m.dim() == 0) return 0.0;
    const auto ev = sym_eigenvalues(m);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

double min_eigenvalue(const SymMatrix& m) { return sym_eigenvalues(m).front(); }

bool is_pd(const SpectralDecomp& eig) {
    if (eig.dim() == 0) return false;
    const double norm = std::max(std::abs(eig.min()), std::abs(eig.max()));
    return eig.min() > kPdRelTol * (1.0 + norm);
}

bool is_pd(const SymMatrix& m) {
    if (m.dim() == 0) return false;
    const auto ev = sym_eigenvalues(m);
    const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
    return ev.front() > kPdRelTol * (1.0 + norm);
}

SymMatrix reassemble(const SpectralDecomp& eig, std::span<const double> values) {
    const std::size_t n = eig.dim();
    const Matrix& v = eig.eigenvectors;
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += v(i, k) * values[k] * v(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    return SymMatrix(out);
}

std::string describe_matrix(const SymMatrix& m) {
    std::ostringstream out;
    out << "dim=" << m.dim() << ", |M|_F=" << std::setprecision(6) << m.frobenius_norm();
    return out.str();
}

SymMatrix frac_power(const SpectralDecomp& eig, double r) {
    if (r == 0.0) return SymMatrix::identity(eig.dim());
    if (!(is_integer(r) && r > 0.0) && !is_pd(eig)) {
        std::ostringstream msg;
        msg << "frac_power: exponent " << r << " needs a positive definite matrix (min eigenvalue "
            << eig.min() << ")";
        throw DomainError(msg.str());
    }
    return apply_fn(eig, [r](double x) { return std::pow(x, r); });
}

SymMatrix frac_power(const SymMatrix& m, double r) {
    if (r == 0.0) return SymMatrix::identity(m.dim());
    if (r == 1.0) return m;
    return frac_power(sym_eig(m), r);
}

SymMatrix matrix_log(const SymMatrix& m) {
    const auto eig = sym_eig(m);
    if (!is_pd(eig)) {
        std::ostringstream msg;
        msg << "matrix_log: matrix is not positive definite (min eigenvalue " << eig.min() << ", "
            << describe_matrix(m) << ")";
        throw DomainError(msg.str());
    }
    return apply_fn(eig, [](double x) { return std::log(x); });
}

SymMatrix matrix_exp(const SymMatrix& m) {
    return apply_fn(m, [](double x) { return std::exp(x); });
}

namespace {

SpectralDecomp pd_eig(const SymMatrix& a, const char* op) {
    auto eig = sym_eig(a);
    if (!is_pd(eig)) {
        std::ostringstream msg;
        msg << op << ": first operand is not positive definite (min eigenvalue " << eig.min()
            << ", " << describe_matrix(a) << ")";
        throw DomainError(msg.str());
    }
    return eig;
}

}  // namespace

SymMatrix congruence(const Matrix& v, const SymMatrix& x) {
    if (v.rows() != x.dim()) {
        std::ostringstream msg;
        msg << "congruence: V has " << v.rows() << " rows, X has dimension " << x.dim();
        throw UsageError(msg.str());
    }
    return SymMatrix(v.transpose() * (x * v));
}

SymMatrix sandwich(const SymMatrix& a, const SymMatrix& x) {
    require_same_dim(a, x, "sandwich");
    const auto half = frac_power(pd_eig(a, "sandwich"), 0.5);
    return SymMatrix(half * (x * half));
}

SymMatrix normalize(const SymMatrix& a, const SymMatrix& b) {
    require_same_dim(a, b, "normalize");
    const auto inv_half = frac_power(pd_eig(a, "normalize"), -0.5);
    return SymMatrix(inv_half * (b * inv_half));
}

OrderMargin loewner_leq(const SymMatrix& x, double norm_x, const SymMatrix& y, double norm_y,
                        const Tolerance& tol) {
    require_same_dim(x, y, "loewner_leq");
    OrderMargin margin;
    margin.lambda_min = x.dim() ? min_eigenvalue(y - x) : 0.0;
    margin.tol_used = tol.abs + tol.rel * std::max(norm_x, norm_y);
    margin.passed = margin.lambda_min >= -margin.tol_used;
    return margin;
}

OrderMargin loewner_leq(const SymMatrix& x, const SymMatrix& y, const Tolerance& tol) {
    require_same_dim(x, y, "loewner_leq");
    return loewner_leq(x, spectral_norm(x), y, spectral_norm(y), tol);
}

}  // namespace opineq
