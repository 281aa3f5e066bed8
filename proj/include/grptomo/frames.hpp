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

// Frames on L^2(G) ~ M_n(C) with the Hilbert-Schmidt inner product.
//
// Two kinds of frame are supported:
//  * group frames {chi_b : b in S_n} or {chi_g : g in Aff_n}, stored as
//    permutations, with analysis/synthesis in O(n) per element and closed
//    forms for the metric operator;
//  * generic frames of dense operators (e.g. the qubit SIC family), whose
//    metric operator is materialized as an n^2 x n^2 matrix and inverted
//    numerically.
//
// Both kinds use the normalized counting measure, weight 1/|frame|.
//
// For a group frame the metric operator is S = Pi_P + Pi_Q/(n-1), where
// Pi_P psi = P psi P, Pi_Q psi = Q psi Q, P = J/n and Q = I - P. The
// off-diagonal blocks P psi Q and Q psi P lie in ker S, so the characteristic
// functions span only the (n-1)^2 + 1 dimensional subspace of matrices with
// equal row and column sums. Reconstruction through the dual frame returns
// the orthogonal projection onto that span.

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "grptomo/algebra.hpp"
#include "grptomo/error.hpp"
#include "grptomo/groupoid.hpp"

namespace grptomo {

inline constexpr double kIllConditionedBound = 1e-8;

using Coefficients = Eigen::VectorXcd;

/// Column index of the matrix unit E_{kj} in vectorized form.
inline Eigen::Index vec_index(int n, int k, int j) {
  return static_cast<Eigen::Index>(k) * n + j;
}

inline Vector vectorize(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Vector v(static_cast<Eigen::Index>(n) * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) v(vec_index(n, k, j)) = m(k, j);
  }
  return v;
}

inline Matrix unvectorize(const Vector& v, int n) {
  Matrix m(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) m(k, j) = v(vec_index(n, k, j));
  }
  return m;
}

class Frame;
inline Matrix metric_matrix(const Frame& frame);

struct FrameBounds {
  double lower = 0.0;  ///< min eigenvalue of S on all of L^2(G)
  double upper = 0.0;  ///< max eigenvalue of S
  double lower_on_span = 0.0;  ///< min eigenvalue of S restricted to its range
  int span_dimension = 0;       ///< rank of S

  bool is_frame() const noexcept { return lower > 0.0 && lower <= upper; }
};

class Frame {
 public:
  static Frame from_group(Group group, int n,
                          int max_factorial_n = kDefaultMaxFactorialN) {
    Frame f;
    f.n_ = n;
    f.group_ = group;
    f.elements_ = enumerate_group(group, n, max_factorial_n);
    f.perms_.reserve(f.elements_.size());
    for (const auto& e : f.elements_) f.perms_.push_back(as_bisection(e));
    return f;
  }

  /// Dense frame; rejects families whose metric operator is near-singular.
  static Frame generic(std::vector<AlgebraElement> vectors) {
    if (vectors.empty()) {
      throw Error(ErrorCode::InvalidInput, "frame must be nonempty");
    }
    Frame f;
    f.n_ = vectors.front().n();
    for (auto& v : vectors) {
      detail::require_same_n(f.n_, v.n(), "frame vector");
      f.dense_.push_back(v.matrix());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(metric_matrix(f),
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < kIllConditionedBound) {
      throw Error(ErrorCode::IllConditioned,
                  "family does not span L^2(G): lower frame bound " +
                      std::to_string(es.eigenvalues()(0)));
    }
    return f;
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept {
    return group_ ? perms_.size() : dense_.size();
  }
  double measure_weight() const noexcept { return 1.0 / static_cast<double>(size()); }

  bool is_group_frame() const noexcept { return group_.has_value(); }
  std::optional<Group> group() const noexcept { return group_; }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const std::vector<Bisection>& permutations() const noexcept { return perms_; }

  Matrix vector(std::size_t i) const {
    return group_ ? permutation_matrix(perms_[i]) : dense_[i];
  }

 private:
  Frame() = default;

  int n_ = 0;
  std::optional<Group> group_;
  std::vector<GroupElement> elements_;
  std::vector<Bisection> perms_;
  std::vector<Matrix> dense_;
};

inline Frame frame_from_symmetric(int n, int max_factorial_n = kDefaultMaxFactorialN) {
  return Frame::from_group(Group::Symmetric, n, max_factorial_n);
}

inline Frame frame_from_affine(int n) { return Frame::from_group(Group::Affine, n); }

/// <chi_b, psi> for every frame vector, in frame order.
inline Coefficients analysis(const Frame& frame, const Matrix& psi) {
  detail::require_same_n(frame.n(), static_cast<int>(psi.rows()), "analysis");
  Coefficients c(static_cast<Eigen::Index>(frame.size()));
  if (frame.is_group_frame()) {
    const auto& perms = frame.permutations();
    for (std::size_t b = 0; b < perms.size(); ++b) {
      Complex acc = 0.0;
      for (int j = 0; j < frame.n(); ++j) acc += psi(perms[b](j), j);
      c(static_cast<Eigen::Index>(b)) = acc;
    }
  } else {
    for (std::size_t i = 0; i < frame.size(); ++i) {
      c(static_cast<Eigen::Index>(i)) = hs_inner(frame.vector(i), psi);
    }
  }
  return c;
}

/// measure_weight * sum_b c_b chi_b.
inline Matrix synthesis(const Frame& frame, const Coefficients& c) {
  if (static_cast<std::size_t>(c.size()) != frame.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(frame.size()) + " coefficients, got " +
                    std::to_string(c.size()));
  }
  const int n = frame.n();
  Matrix out = Matrix::Zero(n, n);
  if (frame.is_group_frame()) {
    const auto& perms = frame.permutations();
    for (std::size_t b = 0; b < perms.size(); ++b) {
      const Complex cb = c(static_cast<Eigen::Index>(b));
      for (int j = 0; j < n; ++j) out(perms[b](j), j) += cb;
    }
  } else {
    for (std::size_t i = 0; i < frame.size(); ++i) {
      out += c(static_cast<Eigen::Index>(i)) * frame.vector(i);
    }
  }
  return out * frame.measure_weight();
}

/// w * sum_b |<chi_b, psi>|^2, the middle term of the frame inequality.
inline double frame_energy(const Frame& frame, const Matrix& psi) {
  return analysis(frame, psi).squaredNorm() * frame.measure_weight();
}

inline Matrix metric_apply_bruteforce(const Frame& frame, const Matrix& psi) {
  return synthesis(frame, analysis(frame, psi));
}

namespace detail {
inline void require_group_n(int n) {
  if (n <= 2) {
    throw Error(ErrorCode::Unsupported,
                "closed-form metric requires n > 2, got " + std::to_string(n));
  }
}
}  // namespace detail

/// S psi = P psi P + Q psi Q / (n-1), from Schur orthogonality of the
/// trivial and standard components of the permutation representation.
inline Matrix metric_apply_closed(const Matrix& psi) {
  const int n = static_cast<int>(psi.rows());
  detail::require_group_n(n);
  return project_trivial(psi) + project_standard(psi) / static_cast<double>(n - 1);
}

/// (1/(n-1)) [psi + (n-2) P psi P]. Equals S on span{chi_b}, but acts as
/// 1/(n-1) on the off-diagonal blocks where S vanishes.
inline Matrix metric_apply_extended(const Matrix& psi) {
  const int n = static_cast<int>(psi.rows());
  detail::require_group_n(n);
  return (psi + static_cast<double>(n - 2) * project_trivial(psi)) /
         static_cast<double>(n - 1);
}

/// (n-1) [psi - (n-2)/(n-1) P psi P], the inverse of metric_apply_extended.
inline Matrix metric_inverse_apply(const Matrix& psi) {
  const int n = static_cast<int>(psi.rows());
  detail::require_group_n(n);
  return static_cast<double>(n - 1) * psi -
         static_cast<double>(n - 2) * project_trivial(psi);
}

/// Moore-Penrose inverse of S: P psi P + (n-1) Q psi Q.
inline Matrix metric_pseudo_inverse_apply(const Matrix& psi) {
  const int n = static_cast<int>(psi.rows());
  detail::require_group_n(n);
  return project_trivial(psi) + static_cast<double>(n - 1) * project_standard(psi);
}

/// The n^2 x n^2 matrix of S in the matrix-unit basis, w * sum_b |chi_b><chi_b|.
inline Matrix metric_matrix(const Frame& frame) {
  const int n = frame.n();
  const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
  Matrix m = Matrix::Zero(d, d);
  if (frame.is_group_frame()) {
    std::vector<Eigen::Index> support(n);
    for (const auto& p : frame.permutations()) {
      for (int j = 0; j < n; ++j) support[j] = vec_index(n, p(j), j);
      for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c) m(support[a], support[c]) += 1.0;
      }
    }
  } else {
    for (std::size_t i = 0; i < frame.size(); ++i) {
      const Vector v = vectorize(frame.vector(i));
      m.noalias() += v * v.adjoint();
    }
  }
  return m * frame.measure_weight();
}

inline FrameBounds frame_bounds_empirical(const Frame& frame,
                                          double rank_tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(metric_matrix(frame),
                                           Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  FrameBounds out;
  out.lower = ev(0);
  out.upper = ev(ev.size() - 1);
  out.lower_on_span = out.upper;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > rank_tol) {
      ++out.span_dimension;
      out.lower_on_span = std::min(out.lower_on_span, ev(i));
    }
  }
  return out;
}

/// Sorted eigenvalues of S, for spectrum checks.
inline Eigen::VectorXd metric_spectrum(const Frame& frame) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(metric_matrix(frame),
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

class DualFrame {
 public:
  const Frame& source() const noexcept { return source_; }
  std::size_t size() const noexcept { return source_.size(); }

  /// chi^b = S^+ chi_b.
  Matrix dual_vector(std::size_t i) const {
    if (source_.is_group_frame()) {
      // S^+ U = P + (n-1)(U - P) because P U P = P for every permutation U.
      const int n = source_.n();
      return static_cast<double>(n - 1) * permutation_matrix(source_.permutations()[i]) -
             static_cast<double>(n - 2) * trivial_projector(n);
    }
    return dense_[i];
  }

  /// <chi^b, psi> for every b.
  Coefficients dual_analysis(const Matrix& psi) const {
    if (!source_.is_group_frame()) {
      Coefficients c(static_cast<Eigen::Index>(size()));
      for (std::size_t i = 0; i < size(); ++i) {
        c(static_cast<Eigen::Index>(i)) = hs_inner(dense_[i], psi);
      }
      return c;
    }
    const int n = source_.n();
    const Complex total = psi.sum() * (static_cast<double>(n - 2) / n);
    Coefficients c = analysis(source_, psi) * static_cast<double>(n - 1);
    c.array() -= total;
    return c;
  }

  /// Applies S^+ (group) or S^{-1} (generic) to psi.
  Matrix apply_inverse_metric(const Matrix& psi) const {
    if (source_.is_group_frame()) return metric_pseudo_inverse_apply(psi);
    return unvectorize(inverse_metric_ * vectorize(psi), source_.n());
  }

 private:
  friend DualFrame dual_frame(const Frame& frame);
  explicit DualFrame(Frame source) : source_(std::move(source)) {}

  Frame source_;
  std::vector<Matrix> dense_;
  Matrix inverse_metric_;
};

inline DualFrame dual_frame(const Frame& frame) {
  DualFrame dual(frame);
  if (frame.is_group_frame()) {
    detail::require_group_n(frame.n());
    return dual;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(metric_matrix(frame));
  const auto& ev = es.eigenvalues();
  if (ev(0) < kIllConditionedBound) {
    throw Error(ErrorCode::IllConditioned,
                "lower frame bound " + std::to_string(ev(0)));
  }
  const Matrix& u = es.eigenvectors();
  dual.inverse_metric_ = u * ev.cwiseInverse().asDiagonal() * u.adjoint();
  for (std::size_t i = 0; i < frame.size(); ++i) {
    dual.dense_.push_back(dual.apply_inverse_metric(frame.vector(i)));
  }
  return dual;
}

/// measure_weight * sum_b c_b chi^b.
inline Matrix reconstruct(const DualFrame& dual, const Coefficients& c) {
  const Frame& frame = dual.source();
  if (static_cast<std::size_t>(c.size()) != frame.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "expected " + std::to_string(frame.size()) + " coefficients, got " +
                    std::to_string(c.size()));
  }
  if (frame.is_group_frame()) {
    // Linear in c: S^+ applied once to the synthesis.
    return dual.apply_inverse_metric(synthesis(frame, c));
  }
  Matrix out = Matrix::Zero(frame.n(), frame.n());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    out += c(static_cast<Eigen::Index>(i)) * dual.dual_vector(i);
  }
  return out * frame.measure_weight();
}

enum class ResolutionOrder {
  FrameThenDual,  ///< w sum_b |chi_b><chi^b|
  DualThenFrame,  ///< w sum_b |chi^b><chi_b|
};

/// max over matrix units E_{kj} of |R(E) - E|_max, R the resolution of identity.
inline double resolution_residual(const DualFrame& dual, ResolutionOrder order) {
  const int n = dual.source().n();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const Matrix e = AlgebraElement::delta(n, k, j).matrix();
      const Matrix r = order == ResolutionOrder::FrameThenDual
                           ? synthesis(dual.source(), dual.dual_analysis(e))
                           : reconstruct(dual, analysis(dual.source(), e));
      worst = std::max(worst, (r - e).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

/// Part of psi recoverable from a group frame: P psi P + Q psi Q.
inline Matrix project_onto_span(const Matrix& psi) {
  return project_trivial(psi) + project_standard(psi);
}

}  // namespace grptomo
