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

/**
 * @file
 * Small dense complex linear algebra. Everything here is sized for the
 * 3-dimensional field space and the 9-dimensional atom-field space; no
 * attempt is made at cache blocking or sparse storage.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "uqsd/tolerances.hpp"

namespace uqsd {

using Complex = std::complex<double>;

class StateVector {
   public:
    explicit StateVector(std::size_t dim);
    StateVector(std::initializer_list<Complex> amplitudes);
    explicit StateVector(std::vector<Complex> amplitudes);

    /// Computational basis vector |index> of the given dimension.
    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amps_.size(); }
    Complex operator[](std::size_t i) const { return amps_[i]; }
    Complex &operator[](std::size_t i) { return amps_[i]; }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }

    double norm_squared() const noexcept;
    bool is_normalized(double tol = tol::kNormalization) const noexcept;

    friend bool operator==(const StateVector &, const StateVector &) = default;

   private:
    std::vector<Complex> amps_;
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const StateVector &a, const StateVector &b);
StateVector operator+(const StateVector &a, const StateVector &b);
StateVector operator*(Complex s, const StateVector &v);
double max_norm_diff(const StateVector &a, const StateVector &b);

/// Dense row-major complex matrix.
class OperatorMatrix {
   public:
    OperatorMatrix(std::size_t rows, std::size_t cols);
    /// Row-major initializer: `{{a, b}, {c, d}}`.
    OperatorMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static OperatorMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static OperatorMatrix identity(std::size_t n);
    static OperatorMatrix diagonal(std::span<const Complex> diag);
    /// |ket><bra|
    static OperatorMatrix outer(const StateVector &ket, const StateVector &bra);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Complex &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    std::span<const Complex> data() const noexcept { return data_; }

    OperatorMatrix adjoint() const;
    Complex trace() const;
    StateVector column(std::size_t j) const;
    OperatorMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                         std::size_t ncols) const;

    bool is_unitary(double tol = tol::kUnitarity) const;
    bool is_hermitian(double tol = tol::kHermiticity) const;
    /// Requires a Hermitian matrix; non-Hermitian input reports false.
    bool is_psd(double tol = tol::kPsd) const;

    OperatorMatrix &operator+=(const OperatorMatrix &o);
    OperatorMatrix &operator-=(const OperatorMatrix &o);
    OperatorMatrix &operator*=(Complex s);

    friend bool operator==(const OperatorMatrix &, const OperatorMatrix &) = default;

   private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix &b);
OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix &b);
OperatorMatrix operator*(Complex s, OperatorMatrix a);
OperatorMatrix operator*(const OperatorMatrix &a, const OperatorMatrix &b);
StateVector operator*(const OperatorMatrix &a, const StateVector &v);

/// Kronecker product; entry (i*rows_b + k, j*cols_b + l) = a(i,j) * b(k,l).
OperatorMatrix tensor(const OperatorMatrix &a, const OperatorMatrix &b);
StateVector tensor(const StateVector &a, const StateVector &b);

/// max_ij |a_ij - b_ij|. Throws ShapeMismatch.
double max_norm_diff(const OperatorMatrix &a, const OperatorMatrix &b);

/// <v|A|v>
Complex expectation(const OperatorMatrix &a, const StateVector &v);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    OperatorMatrix vectors;      // columns are eigenvectors
};

/// Cyclic complex Jacobi diagonalization. Throws NonHermitianInput.
HermitianEigen hermitian_eigen(const OperatorMatrix &h, double hermiticity_tol = tol::kHermiticity);

double min_eigenvalue(const OperatorMatrix &h);

/// exp(-i * scale * h) for Hermitian h, through h = V diag(lambda) V^dagger.
/// Throws NonHermitianInput.
OperatorMatrix expm_hermitian(const OperatorMatrix &h, double scale);

}  // namespace uqsd
