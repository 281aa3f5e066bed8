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

// The groupoid algebra V(G) of the pair groupoid, identified with M_n(C):
// a function f on G is stored as the matrix entries(k, j) = f(k, j).
// States are positive semi-definite groupoid functions phi with trace n,
// evaluated as omega(A_f) = (1/n) <phi, f>.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grptomo/error.hpp"
#include "grptomo/groupoid.hpp"

namespace grptomo {

inline constexpr double kDefaultPsdTolerance = 1e-9;

class AlgebraElement {
 public:
  AlgebraElement() = default;

  explicit AlgebraElement(Matrix entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) {
      throw Error(ErrorCode::NotSquare, "algebra element must be square");
    }
    if (!m_.allFinite()) {
      throw Error(ErrorCode::InvalidInput, "non-finite entry");
    }
  }

  static AlgebraElement zero(int n) { return AlgebraElement(Matrix::Zero(n, n)); }
  static AlgebraElement unit(int n) {
    return AlgebraElement(Matrix::Identity(n, n));
  }
  /// chi_b, the characteristic function of the graph of sigma_b.
  static AlgebraElement characteristic(const Bisection& b) {
    return AlgebraElement(permutation_matrix(b));
  }
  /// Matrix unit E_{kj}, i.e. delta at the transition (k, j).
  static AlgebraElement delta(int n, int k, int j) {
    Matrix m = Matrix::Zero(n, n);
    m(k, j) = 1.0;
    return AlgebraElement(std::move(m));
  }

  int n() const noexcept { return static_cast<int>(m_.rows()); }
  Complex operator()(int k, int j) const { return m_(k, j); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

namespace detail {
inline void require_same_n(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}
}  // namespace detail

/// (f * g)(m, j) = sum_k f(m, k) g(k, j).
inline AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g) {
  detail::require_same_n(f.n(), g.n(), "convolve");
  return AlgebraElement(f.matrix() * g.matrix());
}

inline AlgebraElement involution(const AlgebraElement& f) {
  return AlgebraElement(f.matrix().adjoint());
}

inline Complex tracial_state(const AlgebraElement& f) {
  return f.matrix().trace() / static_cast<double>(f.n());
}

/// <f, g> = sum conj(f(j,k)) g(j,k) = Tr(F^dagger G).
inline Complex hs_inner(const Matrix& f, const Matrix& g) {
  return (f.array().conjugate() * g.array()).sum();
}

inline Complex hs_inner(const AlgebraElement& f, const AlgebraElement& g) {
  detail::require_same_n(f.n(), g.n(), "hs_inner");
  return hs_inner(f.matrix(), g.matrix());
}

inline double hs_norm2(const Matrix& f) { return f.squaredNorm(); }

inline Matrix trivial_projector(int n) {
  return Matrix::Constant(n, n, Complex(1.0 / n, 0.0));
}

/// P psi P for the rank-one projector P = J/n; O(n^2).
inline Matrix project_trivial(const Matrix& psi) {
  const auto n = static_cast<double>(psi.rows());
  return Matrix::Constant(psi.rows(), psi.cols(), psi.sum() / (n * n));
}

/// Q psi Q where Q = I - P.
inline Matrix project_standard(const Matrix& psi) {
  const auto n = static_cast<double>(psi.rows());
  // Q psi Q = psi - P psi - psi P + P psi P, with (P psi)(k, j) the column mean.
  const Eigen::RowVectorXcd col_mean = psi.colwise().sum() / n;
  const Eigen::VectorXcd row_mean = psi.rowwise().sum() / n;
  Matrix out = psi;
  out.rowwise() -= col_mean;
  out.colwise() -= row_mean;
  out.array() += psi.sum() / (n * n);
  return out;
}

struct PsdCheck {
  bool hermitian = false;
  bool positive = false;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  /// Eigenvector for min_eigenvalue of the Hermitian part.
  Vector witness;
  /// Unit v maximising |Im <v|phi|v>|, and that imaginary part.
  Vector hermiticity_witness;
  double hermiticity_witness_value = 0.0;

  bool ok() const noexcept { return hermitian && positive; }
};

/// Hermiticity and minimum eigenvalue via a Hermitian eigendecomposition.
inline PsdCheck check_positive_semidefinite(const Matrix& phi,
                                            double tol = kDefaultPsdTolerance) {
  if (phi.rows() != phi.cols()) {
    throw Error(ErrorCode::NotSquare, "PSD check requires a square matrix");
  }
  PsdCheck out;
  out.hermiticity_error = (phi - phi.adjoint()).cwiseAbs().maxCoeff();
  out.hermitian = out.hermiticity_error <= tol;
  const Matrix herm = 0.5 * (phi + phi.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  out.min_eigenvalue = es.eigenvalues()(0);
  out.witness = es.eigenvectors().col(0);
  out.positive = out.min_eigenvalue >= -tol;
  if (!out.hermitian) {
    const Matrix skew = Complex(0.0, -0.5) * (phi - phi.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> ss(skew);
    const auto& ev = ss.eigenvalues();
    const Eigen::Index k = std::abs(ev(0)) >= std::abs(ev(ev.size() - 1)) ? 0 : ev.size() - 1;
    out.hermiticity_witness = ss.eigenvectors().col(k);
    out.hermiticity_witness_value = ev(k);
  }
  return out;
}

inline bool is_positive_semidefinite(const Matrix& phi,
                                     double tol = kDefaultPsdTolerance) {
  return check_positive_semidefinite(phi, tol).ok();
}

struct StateCheck {
  PsdCheck psd;
  double trace_error = 0.0;
  bool finite = true;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

inline StateCheck validate_state_matrix(const Matrix& phi,
                                        double tol = kDefaultPsdTolerance) {
  StateCheck out;
  if (phi.rows() != phi.cols()) {
    out.violations.push_back("not square");
    return out;
  }
  if (!phi.allFinite()) {
    out.finite = false;
    out.violations.push_back("non-finite entries");
    return out;
  }
  const auto n = static_cast<double>(phi.rows());
  out.psd = check_positive_semidefinite(phi, tol);
  if (!out.psd.hermitian) {
    out.violations.push_back("not Hermitian (max |phi - phi^dagger| = " +
                             std::to_string(out.psd.hermiticity_error) + ")");
  }
  if (!out.psd.positive) {
    out.violations.push_back("not positive semi-definite (min eigenvalue " +
                             std::to_string(out.psd.min_eigenvalue) + ")");
  }
  out.trace_error = std::abs(phi.trace() - Complex(n, 0.0));
  if (out.trace_error > tol * std::max(1.0, n)) {
    out.violations.push_back("trace is not n (|Tr phi - n| = " +
                             std::to_string(out.trace_error) + ")");
  }
  return out;
}

/// A normalized positive groupoid function: Hermitian, PSD, trace n.
class StateFunction {
 public:
  explicit StateFunction(Matrix phi, double tol = kDefaultPsdTolerance)
      : phi_(std::move(phi)) {
    const StateCheck check = validate_state_matrix(phi_, tol);
    if (!check.ok()) {
      std::string msg = "invalid state:";
      for (const auto& v : check.violations) msg += " " + v + ";";
      throw Error(ErrorCode::InvalidInput, msg);
    }
  }

  static StateFunction from_density(const Matrix& rho,
                                    double tol = kDefaultPsdTolerance) {
    return StateFunction(rho * static_cast<double>(rho.rows()), tol);
  }

  static StateFunction maximally_mixed(int n) {
    return StateFunction(Matrix::Identity(n, n));
  }

  int n() const noexcept { return static_cast<int>(phi_.rows()); }
  const Matrix& matrix() const noexcept { return phi_; }
  Matrix density_matrix() const { return phi_ / static_cast<double>(n()); }

 private:
  Matrix phi_;
};

/// omega(A_f) = (1/n) sum conj(phi(j,k)) f(j,k).
inline Complex evaluate_state(const StateFunction& phi, const AlgebraElement& f) {
  detail::require_same_n(phi.n(), f.n(), "evaluate_state");
  return hs_inner(phi.matrix(), f.matrix()) / static_cast<double>(f.n());
}

/// Matrix with i.i.d. standard complex Gaussian entries, filled row-major.
inline Matrix random_gaussian_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

inline AlgebraElement random_element(int n, std::mt19937_64& rng) {
  return AlgebraElement(random_gaussian_matrix(n, rng));
}

/// Phi = n G^dagger G / Tr(G^dagger G) for a seeded complex Gaussian G.
inline StateFunction random_state(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
  std::mt19937_64 rng(seed);
  const Matrix g = random_gaussian_matrix(n, rng);
  Matrix gram = g.adjoint() * g;
  gram = 0.5 * (gram + gram.adjoint()).eval();
  const double tr = gram.trace().real();
  return StateFunction(gram * (static_cast<double>(n) / tr));
}

}  // namespace grptomo
