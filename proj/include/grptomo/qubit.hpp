// Copyright 2026 The grptomo Authors
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

// The qubit (n = 2), which the permutation-frame construction does not cover:
// Pauli tomography, Bloch reconstruction, the three Pauli MUBs and the SIC
// tetrahedron. SIC inversion goes through the generic dual-frame machinery.

#include <Eigen/Dense>

#include <array>
#include <cmath>

#include "grptomo/algebra.hpp"
#include "grptomo/frames.hpp"

namespace grptomo::qubit {

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline const Complex kI{0.0, 1.0};

inline Matrix identity() { return Matrix::Identity(2, 2); }
inline Matrix sigma1() { return mat2(0, 1, 1, 0); }
inline Matrix sigma2() { return mat2(0, -kI, kI, 0); }
inline Matrix sigma3() { return mat2(1, 0, 0, -1); }
inline std::array<Matrix, 3> pauli() { return {sigma1(), sigma2(), sigma3()}; }

struct PauliTomographicSet {
  std::array<Matrix, 4> projectors;  ///< P_1..P_4
  std::array<Matrix, 4> orthonormal; ///< W_1..W_4
};

inline PauliTomographicSet pauli_tomographic_set() {
  PauliTomographicSet s;
  s.projectors = {mat2(1, 0, 0, 0), mat2(0, 0, 0, 1), 0.5 * mat2(1, 1, 1, 1),
                  0.5 * mat2(1, -kI, kI, 1)};
  s.orthonormal = {mat2(1, 0, 0, 0), mat2(0, 0, 0, 1), mat2(0, 1, 0, 0),
                   mat2(0, 0, 1, 0)};
  return s;
}

/// Probabilities of the +1 outcome for sigma_1, sigma_2, sigma_3.
struct BlochTomogram {
  double p1 = 0.5;
  double p2 = 0.5;
  double p3 = 0.5;

  /// sum_i (p_i - 1/2)^2; at most 1/4 for a physical state.
  double bloch_norm2() const noexcept {
    return (p1 - 0.5) * (p1 - 0.5) + (p2 - 0.5) * (p2 - 0.5) +
           (p3 - 0.5) * (p3 - 0.5);
  }
  bool is_physical(double tol = 1e-12) const noexcept {
    return bloch_norm2() <= 0.25 + tol;
  }
};

inline BlochTomogram bloch_tomogram(const Matrix& rho) {
  const auto prob = [&](const Matrix& s) {
    return (rho * (identity() + s) * 0.5).trace().real();
  };
  return {prob(sigma1()), prob(sigma2()), prob(sigma3())};
}

struct BlochReconstruction {
  Matrix rho;
  bool physical = false;
};

/// rho = 1/2 + sum_i (p_i - 1/2) sigma_i.
inline BlochReconstruction bloch_reconstruct(const BlochTomogram& t,
                                             double tol = 1e-12) {
  Matrix rho = 0.5 * identity() + (t.p1 - 0.5) * sigma1() +
               (t.p2 - 0.5) * sigma2() + (t.p3 - 0.5) * sigma3();
  return {std::move(rho), t.is_physical(tol)};
}

/// |sum_i (p_i - 1/2)^2 - 1/4|, zero exactly on pure states.
inline double purity_defect(const BlochTomogram& t) {
  return std::abs(t.bloch_norm2() - 0.25);
}

/// Eigenbases of sigma_3, sigma_1, sigma_2, as columns.
inline std::array<Matrix, 3> qubit_mub() {
  const double h = 1.0 / std::sqrt(2.0);
  return {mat2(1, 0, 0, 1), mat2(h, h, h, -h), mat2(h, h, h * kI, -h * kI)};
}

struct SicTetrahedron {
  std::array<Eigen::Vector3d, 4> directions;
  std::array<Matrix, 4> elements;  ///< P_j = (1 + a_j . sigma) / 4
};

inline SicTetrahedron sic_tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  SicTetrahedron t;
  t.directions = {Eigen::Vector3d(s, s, s), Eigen::Vector3d(s, -s, -s),
                  Eigen::Vector3d(-s, s, -s), Eigen::Vector3d(-s, -s, s)};
  const auto sig = pauli();
  for (int j = 0; j < 4; ++j) {
    const auto& a = t.directions[j];
    t.elements[j] = 0.25 * (identity() + a(0) * sig[0] + a(1) * sig[1] + a(2) * sig[2]);
  }
  return t;
}

inline Frame sic_frame() {
  const auto t = sic_tetrahedron();
  std::vector<AlgebraElement> v;
  for (const auto& p : t.elements) v.emplace_back(p);
  return Frame::generic(std::move(v));
}

/// q_j = Tr(P_j rho).
inline std::array<double, 4> sic_probabilities(const Matrix& rho) {
  const auto t = sic_tetrahedron();
  std::array<double, 4> q{};
  for (int j = 0; j < 4; ++j) q[j] = (t.elements[j] * rho).trace().real();
  return q;
}

struct SicReconstruction {
  Matrix rho;
  bool valid_probabilities = false;
};

/// rho = w sum_j q_j P^j, P^j the dual frame of {P_j} on M_2(C).
///
/// With the normalized counting measure the analysis coefficient of rho is
/// <P_j, rho> = q_j, so the dual-frame reconstruction applies directly.
inline SicReconstruction sic_reconstruct(const std::array<double, 4>& q) {
  static const DualFrame dual = dual_frame(sic_frame());
  Coefficients c(4);
  double total = 0.0;
  bool nonneg = true;
  for (int j = 0; j < 4; ++j) {
    c(j) = q[j];
    total += q[j];
    nonneg = nonneg && q[j] >= -1e-12;
  }
  return {reconstruct(dual, c), nonneg && std::abs(total - 1.0) <= 1e-12};
}

}  // namespace grptomo::qubit
