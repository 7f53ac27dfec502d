// Copyright 2026 The qgame Authors
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

// Dense complex linear algebra for 2x2 through 8x8 matrices, the strategy
// matrix constructors, the closed-form entangling gate, and a cyclic Jacobi
// eigensolver for real symmetric 4x4 matrices.

#ifndef QGAME_LINALG_HPP_
#define QGAME_LINALG_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgame/errors.hpp"

namespace qgame {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Row-major dense complex matrix. Small and value-typed; every operation
// returns a fresh matrix, nothing is mutated in place after construction.
class ComplexMatrix {
 public:
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0) throw std::domain_error("matrix dimensions must be positive");
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Complex& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  const Complex& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  ComplexMatrix operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw std::domain_error("matrix product dimension mismatch");
    ComplexMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Complex aik = at(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
      }
    return r;
  }

  ComplexMatrix operator+(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("matrix sum dimension mismatch");
    ComplexMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
  }

  ComplexMatrix operator-(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("matrix diff dimension mismatch");
    ComplexMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
    ComplexMatrix r(m.rows_, m.cols_);
    for (size_t i = 0; i < m.a_.size(); ++i) r.a_[i] = s * m.a_[i];
    return r;
  }

  ComplexMatrix dagger() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
  }

  double max_abs_diff(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::domain_error("matrix diff dimension mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
  }

  bool is_unitary(double tol = 1e-12) const {
    if (rows_ != cols_) return false;
    return (dagger() * (*this)).max_abs_diff(identity(rows_)) <= tol;
  }

 private:
  int rows_, cols_;
  std::vector<Complex> a_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Complex aij = a.at(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
    }
  return r;
}

// Normalized pure state on 2 or 3 qubits; amplitudes indexed by the basis
// integer with the first player as the most significant bit.
struct StateVector {
  int dim = 0;
  std::vector<Complex> amplitudes;

  StateVector() = default;
  explicit StateVector(int d) : dim(d), amplitudes(static_cast<size_t>(d)) {}

  static StateVector basis(int d, int index) {
    StateVector s(d);
    s.amplitudes[static_cast<size_t>(index)] = 1.0;
    return s;
  }

  double norm() const {
    double n = 0.0;
    for (const Complex& a : amplitudes) n += std::norm(a);
    return std::sqrt(n);
  }
};

inline StateVector apply(const ComplexMatrix& m, const StateVector& v) {
  if (m.cols() != v.dim) throw std::domain_error("matrix-state dimension mismatch");
  StateVector r(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    Complex s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m.at(i, j) * v.amplitudes[static_cast<size_t>(j)];
    r.amplitudes[static_cast<size_t>(i)] = s;
  }
  return r;
}

inline ComplexMatrix identity2() { return ComplexMatrix::identity(2); }

inline ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  return m;
}

inline ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m.at(0, 1) = Complex(0.0, -1.0);
  m.at(1, 0) = Complex(0.0, 1.0);
  return m;
}

inline ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m.at(0, 0) = 1.0;
  m.at(1, 1) = -1.0;
  return m;
}

// The two-player defect operator: the real bit flip [[0,1],[-1,0]].
inline ComplexMatrix dhat() {
  ComplexMatrix m(2, 2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = -1.0;
  return m;
}

// Entangling gate J = exp{i (gamma/2) G}. Both generators square to the
// identity, so the exponential collapses to cos(gamma/2) I + i sin(gamma/2) G.
// G is D^D for two players and sx^sx^sx for three.
inline ComplexMatrix entangler(int players, double gamma) {
  if (players != 2 && players != 3) throw std::domain_error("entangler: players must be 2 or 3");
  if (!(gamma >= 0.0 && gamma <= kPi / 2))
    throw std::domain_error("entangler: gamma must lie in [0, pi/2]");
  const ComplexMatrix g =
      players == 2 ? kron(dhat(), dhat()) : kron(kron(sigma_x(), sigma_x()), sigma_x());
  const int dim = players == 2 ? 4 : 8;
  return Complex(std::cos(gamma / 2), 0.0) * ComplexMatrix::identity(dim) +
         Complex(0.0, std::sin(gamma / 2)) * g;
}

// U(theta, phi) with the phase on the diagonal:
//   [[ e^{i phi} cos(theta/2), sin(theta/2)            ],
//    [ -sin(theta/2),          e^{-i phi} cos(theta/2) ]]
inline ComplexMatrix unitary_from_two_param_diag(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::domain_error("theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi <= kPi / 2)) throw std::domain_error("phi must lie in [0, pi/2]");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  ComplexMatrix m(2, 2);
  m.at(0, 0) = std::polar(c, phi);
  m.at(0, 1) = s;
  m.at(1, 0) = -s;
  m.at(1, 1) = std::polar(c, -phi);
  return m;
}

// U(theta, phi) with the phase off the diagonal:
//   [[ cos(theta/2),            e^{i phi} sin(theta/2) ],
//    [ -e^{-i phi} sin(theta/2), cos(theta/2)          ]]
inline ComplexMatrix unitary_from_two_param_offdiag(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::domain_error("theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi <= kPi / 2)) throw std::domain_error("phi must lie in [0, pi/2]");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  ComplexMatrix m(2, 2);
  m.at(0, 0) = c;
  m.at(0, 1) = std::polar(s, phi);
  m.at(1, 0) = -std::polar(s, -phi);
  m.at(1, 1) = c;
  return m;
}

using Vec4 = std::array<double, 4>;

inline double dot4(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm4(const Vec4& v) { return std::sqrt(dot4(v, v)); }

inline Vec4 normalized4(const Vec4& v) {
  const double n = norm4(v);
  if (n < 1e-12) throw std::domain_error("cannot normalize a zero 4-vector");
  return {v[0] / n, v[1] / n, v[2] / n, v[3] / n};
}

// U(w,x,y,z) = w I + i (x sx + y sy + z sz). The coefficient vector must be
// unit length; drift up to 1e-9 is renormalized, anything farther is an error
// so that genuinely bad inputs are not silently masked.
inline ComplexMatrix unitary_from_su2(const Vec4& coeffs) {
  const double n = norm4(coeffs);
  if (n < 1e-12) throw std::domain_error("su2 coefficients form a zero vector");
  if (std::abs(n - 1.0) > 1e-9)
    throw std::domain_error("su2 coefficient vector is not unit length");
  const double w = coeffs[0] / n, x = coeffs[1] / n, y = coeffs[2] / n, z = coeffs[3] / n;
  ComplexMatrix m(2, 2);
  m.at(0, 0) = Complex(w, z);
  m.at(0, 1) = Complex(y, x);
  m.at(1, 0) = Complex(-y, x);
  m.at(1, 1) = Complex(w, -z);
  return m;
}

// Real symmetric 4x4 quadratic form; the upper triangle is the storage, the
// mirror image is produced on read so symmetry holds exactly.
class SymmetricMatrix4 {
 public:
  SymmetricMatrix4() : u_{} {}

  double at(int i, int j) const { return u_[index(i, j)]; }
  void set(int i, int j, double v) { u_[index(i, j)] = v; }

  double quadratic(const Vec4& v) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) s += v[i] * at(i, j) * v[j];
    return s;
  }

  Vec4 multiply(const Vec4& v) const {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r[i] += at(i, j) * v[j];
    return r;
  }

  double trace() const { return at(0, 0) + at(1, 1) + at(2, 2) + at(3, 3); }

 private:
  static int index(int i, int j) {
    if (i > j) std::swap(i, j);
    // Upper-triangle offsets for a 4x4: row starts 0, 4, 7, 9.
    static constexpr int row_start[4] = {0, 4, 7, 9};
    return row_start[i] + (j - i);
  }
  std::array<double, 10> u_;
};

struct EigenDecomposition4 {
  std::array<double, 4> eigenvalues{};   // descending
  std::array<Vec4, 4> eigenvectors{};    // orthonormal, eigenvectors[k] pairs with eigenvalues[k]
  std::vector<Vec4> top_eigenspace;      // all eigenvectors within 1e-9 (rel.) of the maximum
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
// 1e-12; at most 50 sweeps for a 4x4 this always suffices unless the input
// is pathological, in which case the residual is reported.
inline EigenDecomposition4 jacobi_eigs(const SymmetricMatrix4& m) {
  double a[4][4];
  double v[4][4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a[i][j] = m.at(i, j);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) s += a[i][j] * a[i][j];
    return std::sqrt(s);
  };

  bool converged = off_norm() <= 1e-12;
  for (int sweep = 0; sweep < 50 && !converged; ++sweep) {
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 4; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 4; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 4; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 4; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    converged = off_norm() <= 1e-12;
  }
  if (!converged) {
    std::ostringstream os;
    os << "jacobi_eigs did not converge in 50 sweeps; off-diagonal residual " << off_norm();
    throw NumericalError(os.str());
  }

  std::array<int, 4> order = {0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] > a[j][j]; });

  EigenDecomposition4 d;
  for (int k = 0; k < 4; ++k) {
    d.eigenvalues[static_cast<size_t>(k)] = a[order[static_cast<size_t>(k)]][order[static_cast<size_t>(k)]];
    for (int r = 0; r < 4; ++r)
      d.eigenvectors[static_cast<size_t>(k)][static_cast<size_t>(r)] = v[r][order[static_cast<size_t>(k)]];
  }
  const double lmax = d.eigenvalues[0];
  const double band = 1e-9 * std::max(1.0, std::abs(lmax));
  for (int k = 0; k < 4; ++k)
    if (d.eigenvalues[static_cast<size_t>(k)] >= lmax - band)
      d.top_eigenspace.push_back(d.eigenvectors[static_cast<size_t>(k)]);
  return d;
}

}  // namespace qgame

#endif  // QGAME_LINALG_HPP_
