// Copyright 2026 The uqsd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uqsd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "uqsd/errors.hpp"

namespace uqsd {

namespace {

void require_same_shape(const OperatorMatrix &a, const OperatorMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeMismatch(std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    }
}

double hermiticity_defect(const OperatorMatrix &a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return worst;
}

double off_diagonal_norm(const OperatorMatrix &a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::size_t dim) : amps_(dim) {}
StateVector::StateVector(std::initializer_list<Complex> amplitudes) : amps_(amplitudes) {}
StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    StateVector v(dim);
    v[index] = 1.0;
    return v;
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto &a : amps_) sum += std::norm(a);
    return sum;
}

bool StateVector::is_normalized(double tol) const noexcept {
    return std::abs(norm_squared() - 1.0) <= tol;
}

Complex inner(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) throw ShapeMismatch("inner: dimension mismatch");
    Complex sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) sum += std::conj(a[i]) * b[i];
    return sum;
}

StateVector operator+(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) throw ShapeMismatch("vector add: dimension mismatch");
    StateVector out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
}

StateVector operator*(Complex s, const StateVector &v) {
    StateVector out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
    return out;
}

double max_norm_diff(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) throw ShapeMismatch("max_norm_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// ---------------------------------------------------------------------------
// OperatorMatrix

OperatorMatrix::OperatorMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

OperatorMatrix::OperatorMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) throw ShapeMismatch("OperatorMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

OperatorMatrix OperatorMatrix::identity(std::size_t n) {
    OperatorMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

OperatorMatrix OperatorMatrix::diagonal(std::span<const Complex> diag) {
    OperatorMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

OperatorMatrix OperatorMatrix::outer(const StateVector &ket, const StateVector &bra) {
    OperatorMatrix m(ket.dim(), bra.dim());
    for (std::size_t i = 0; i < ket.dim(); ++i) {
        for (std::size_t j = 0; j < bra.dim(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    }
    return m;
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

Complex OperatorMatrix::trace() const {
    if (!is_square()) throw ShapeMismatch("trace of non-square matrix");
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) sum += (*this)(i, i);
    return sum;
}

StateVector OperatorMatrix::column(std::size_t j) const {
    StateVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

OperatorMatrix OperatorMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                     std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) throw ShapeMismatch("block out of range");
    OperatorMatrix out(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
    }
    return out;
}

bool OperatorMatrix::is_unitary(double tol) const {
    if (!is_square()) return false;
    return max_norm_diff(adjoint() * (*this), identity(rows_)) <= tol;
}

bool OperatorMatrix::is_hermitian(double tol) const {
    return is_square() && hermiticity_defect(*this) <= tol;
}

bool OperatorMatrix::is_psd(double tol) const {
    if (!is_hermitian()) return false;
    return min_eigenvalue(*this) >= -tol;
}

OperatorMatrix &OperatorMatrix::operator+=(const OperatorMatrix &o) {
    require_same_shape(*this, o, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

OperatorMatrix &OperatorMatrix::operator-=(const OperatorMatrix &o) {
    require_same_shape(*this, o, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

OperatorMatrix &OperatorMatrix::operator*=(Complex s) {
    for (auto &x : data_) x *= s;
    return *this;
}

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix &b) { return a += b; }
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix &b) { return a -= b; }
OperatorMatrix operator*(Complex s, OperatorMatrix a) { return a *= s; }

OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b) {
    if (a.cols() != b.rows()) throw ShapeMismatch("matrix product: inner dimension mismatch");
    OperatorMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

StateVector operator*(const OperatorMatrix &a, const StateVector &v) {
    if (a.cols() != v.dim()) throw ShapeMismatch("matrix-vector product: dimension mismatch");
    StateVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) sum += a(i, j) * v[j];
        out[i] = sum;
    }
    return out;
}

OperatorMatrix tensor(const OperatorMatrix &a, const OperatorMatrix &b) {
    OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    StateVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
    }
    return out;
}

double max_norm_diff(const OperatorMatrix &a, const OperatorMatrix &b) {
    require_same_shape(a, b, "max_norm_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

Complex expectation(const OperatorMatrix &a, const StateVector &v) { return inner(v, a * v); }

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

HermitianEigen hermitian_eigen(const OperatorMatrix &h, double hermiticity_tol) {
    if (!h.is_square()) throw NonHermitianInput("hermitian_eigen: matrix is not square");
    const double defect = hermiticity_defect(h);
    if (defect > hermiticity_tol) {
        throw NonHermitianInput("hermitian_eigen: ||A - A^dagger||_max = " +
                                std::to_string(defect));
    }

    const std::size_t n = h.rows();
    OperatorMatrix a = h;
    OperatorMatrix v = OperatorMatrix::identity(n);

    double frobenius = 0.0;
    for (const auto &x : a.data()) frobenius += std::norm(x);
    frobenius = std::sqrt(frobenius);
    const double target = 1e-17 * frobenius;

    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-300) continue;
                const Complex phase_conj = std::conj(apq / r);

                // Rotation J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane
                // zeroes a(p, q) under a <- J^dagger a J.
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * phase_conj;
                const Complex jqq = c * phase_conj;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen out{std::vector<double>(n), OperatorMatrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        // The imaginary part of the diagonal is rounding noise.
        out.values[col] = a(order[col], order[col]).real();
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, col) = v(k, order[col]);
    }
    return out;
}

double min_eigenvalue(const OperatorMatrix &h) {
    const auto eig = hermitian_eigen(h);
    return eig.values.empty() ? 0.0 : eig.values.front();
}

OperatorMatrix expm_hermitian(const OperatorMatrix &h, double scale) {
    const auto eig = hermitian_eigen(h);
    const std::size_t n = h.rows();
    std::vector<Complex> phases(n);
    for (std::size_t i = 0; i < n; ++i) {
        phases[i] = std::polar(1.0, -scale * eig.values[i]);
    }
    return eig.vectors * OperatorMatrix::diagonal(phases) * eig.vectors.adjoint();
}

}  // namespace uqsd
