// Copyright 2026 The seqent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <vector>

#include "seqent/errors.hpp"

namespace seqent {

using Complex = std::complex<double>;

/*******************************************************************************
 *
 * CMatrix: small dense row-major complex matrix
 *
 ******************************************************************************/

class CMatrix {
 public:
  CMatrix() = default;

  // Zero matrix of the given shape.
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {
    if (rows == 0 || cols == 0)
      throw DimensionError("CMatrix: dimensions must be positive");
  }

  // Build from nested rows; every row must have the same length and every
  // entry must be finite.
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0)
      throw DimensionError("CMatrix: dimensions must be positive");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw DimensionError("CMatrix: ragged row in initializer");
      for (const auto& v : r) data_.push_back(v);
    }
    if (!is_finite()) throw DomainError("CMatrix: non-finite entry");
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diagonal(std::initializer_list<double> diag) {
    CMatrix m(diag.size(), diag.size());
    std::size_t i = 0;
    for (double d : diag) {
      m(i, i) = d;
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return data_; }

  bool is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }

 private:
  void require_same_shape(const CMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      std::ostringstream msg;
      msg << "CMatrix " << op << ": shape " << rows_ << "x" << cols_ << " vs "
          << o.rows_ << "x" << o.cols_;
      throw DimensionError(msg.str());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/*******************************************************************************
 *
 * Basic algebra
 *
 ******************************************************************************/

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline CMatrix dagger(const CMatrix& a) {
  CMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream msg;
    msg << "matmul: inner dimensions differ (" << a.rows() << "x" << a.cols()
        << " * " << b.rows() << "x" << b.cols() << ")";
    throw DimensionError(msg.str());
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

inline Complex trace(const CMatrix& a) {
  if (!a.square()) throw DimensionError("trace: matrix is not square");
  Complex s{};
  for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
  return s;
}

/// Largest entrywise |a - b|.
inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_abs_diff: shapes differ");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

/// max |a - a^dagger| entrywise; +inf for non-square input.
inline double hermiticity_defect(const CMatrix& a) {
  if (!a.square()) return HUGE_VAL;
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

/// (M + M^dagger) / 2.
inline CMatrix hermitize(const CMatrix& a) {
  CMatrix out = a + dagger(a);
  out *= 0.5;
  return out;
}

/*******************************************************************************
 *
 * Hermitian eigenvalues: cyclic complex Jacobi
 *
 ******************************************************************************/

struct JacobiOptions {
  double hermitian_tol = 1e-12;
  double off_norm_tol = 1e-13;
  int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with the unitary J = diag(1, e^{-i phi}) * R(c, s),
// where phi = arg a(p,q) and R is the real Jacobi rotation of the resulting
// real symmetric 2x2 block. Applies a <- J^dagger a J in place.
inline void jacobi_rotate(CMatrix& a, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const Complex conj_phase = std::conj(phase);
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * conj_phase * akq;
    a(k, q) = s * akp + c * conj_phase * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace detail

/// Real eigenvalues of a Hermitian matrix, ascending.
///
/// Cyclic Jacobi sweeps over the strict upper triangle until the
/// off-diagonal Frobenius norm drops below `opts.off_norm_tol` (or
/// `opts.max_sweeps` sweeps have run). Throws NotHermitianError when
/// max |a - a^dagger| exceeds `opts.hermitian_tol`.
inline std::vector<double> hermitian_eigenvalues(const CMatrix& input,
                                                 const JacobiOptions& opts = {}) {
  if (!input.square()) throw DimensionError("hermitian_eigenvalues: matrix is not square");
  const double defect = hermiticity_defect(input);
  if (!(defect <= opts.hermitian_tol)) {
    std::ostringstream msg;
    msg << "hermitian_eigenvalues: input is not Hermitian (max |a - a^dagger| = " << defect
        << ", tolerance " << opts.hermitian_tol << ")";
    throw NotHermitianError(msg.str());
  }
  CMatrix a = hermitize(input);
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) < opts.off_norm_tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, p, q);
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

/*******************************************************************************
 *
 * Partial transpose on a two-qubit operator
 *
 ******************************************************************************/

enum class Subsystem { First, Second };

/// Transposes the chosen qubit of a 4x4 operator written in the
/// |ab> = |a> (x) |b> product basis.
inline CMatrix partial_transpose(const CMatrix& rho, Subsystem which) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionError("partial_transpose: expected a 4x4 matrix");
  CMatrix out(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) {
          // <ab| rho |cd>
          const Complex v = rho(2 * a + b, 2 * c + d);
          if (which == Subsystem::Second)
            out(2 * a + d, 2 * c + b) = v;
          else
            out(2 * c + b, 2 * a + d) = v;
        }
  return out;
}

}  // namespace seqent
