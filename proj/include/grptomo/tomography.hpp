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

// Tomograms of states along bisections and reconstruction from tomogram
// families.
//
// Canonical eigenbases of U(b), frozen so that tomograms are reproducible:
//  * generic permutation: cycles ordered by smallest element, each started at
//    its smallest element c_0 -> c_1 -> ...; within a cycle of length L the
//    vectors sum_i e^{-2 pi i m i / L} e_{c_i} / sqrt(L), phase 2 pi m / L;
//  * affine (1, ell): the Fourier basis psi_m(k) = e^{2 pi i m k/n}/sqrt(n),
//    phase -2 pi m ell / n;
//  * affine (mu != 1, ell) with fixed point x0: index 0 is delta_{x0}
//    (phase 0), index m = 1..n-1 is u_m(x0 + s) = e^{2 pi i m log(s)/(n-1)}
//    / sqrt(n-1) for s != 0, phase -2 pi m log(mu) / (n-1).
// Phases are reported in [0, 2 pi).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grptomo/algebra.hpp"
#include "grptomo/error.hpp"
#include "grptomo/finite_field.hpp"
#include "grptomo/frames.hpp"
#include "grptomo/groupoid.hpp"

namespace grptomo {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct EigenBasis {
  Matrix vectors;               ///< column m is |m>
  std::vector<double> phases;   ///< U|m> = e^{i phases[m]} |m>

  int n() const noexcept { return static_cast<int>(vectors.rows()); }
};

/// 2 pi * num / den reduced to [0, 2 pi), exact in the integer part.
inline double phase_fraction(std::int64_t num, std::int64_t den) {
  return kTwoPi * static_cast<double>(mod(num, den)) / static_cast<double>(den);
}

inline Complex unit_phase(std::int64_t num, std::int64_t den) {
  const double t = phase_fraction(num, den);
  return {std::cos(t), std::sin(t)};
}

inline double orthonormality_residual(const Matrix& vectors) {
  const auto d = vectors.cols();
  return (vectors.adjoint() * vectors - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

/// max_m |U|m> - e^{i theta_m}|m>|_max.
inline double eigen_residual(const Matrix& u, const EigenBasis& basis) {
  double worst = 0.0;
  for (int m = 0; m < basis.n(); ++m) {
    const Vector v = basis.vectors.col(m);
    const Complex lambda = std::polar(1.0, basis.phases[m]);
    worst = std::max(worst, (u * v - lambda * v).cwiseAbs().maxCoeff());
  }
  return worst;
}

inline EigenBasis canonical_eigenbasis(const Bisection& b) {
  const int n = b.n();
  EigenBasis out{Matrix::Zero(n, n), {}};
  out.phases.reserve(n);
  std::vector<char> seen(n, 0);
  int col = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle{start};
    seen[start] = 1;
    for (int x = b(start); x != start; x = b(x)) {
      cycle.push_back(x);
      seen[x] = 1;
    }
    const auto len = static_cast<std::int64_t>(cycle.size());
    const double norm = 1.0 / std::sqrt(static_cast<double>(len));
    for (std::int64_t m = 0; m < len; ++m, ++col) {
      for (std::int64_t i = 0; i < len; ++i) {
        out.vectors(cycle[i], col) = norm * unit_phase(-m * i, len);
      }
      out.phases.push_back(phase_fraction(m, len));
    }
  }
  return out;
}

/// psi_m(k) = e^{2 pi i m k / n} / sqrt(n), column m.
inline Matrix fourier_vectors(int n) {
  Matrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < n; ++m) {
      f(k, m) = norm * unit_phase(static_cast<std::int64_t>(m) * k, n);
    }
  }
  return f;
}

/// delta_{x0} followed by the multiplicative-character vectors around x0.
inline Matrix fixed_point_vectors(int x0, const DiscreteLogTable& table) {
  const int n = static_cast<int>(table.modulus());
  Matrix v = Matrix::Zero(n, n);
  v(x0, 0) = 1.0;
  const double norm = 1.0 / std::sqrt(static_cast<double>(n - 1));
  for (int s = 1; s < n; ++s) {
    const std::int64_t ls = table.log(s);
    const int row = static_cast<int>(mod(x0 + s, n));
    for (int m = 1; m < n; ++m) {
      v(row, m) = norm * unit_phase(m * ls, n - 1);
    }
  }
  return v;
}

inline std::vector<double> affine_phases(const AffineBisection& g,
                                         const DiscreteLogTable& table) {
  const int n = g.n();
  std::vector<double> phases(n, 0.0);
  if (g.is_translation()) {
    for (int m = 0; m < n; ++m) phases[m] = phase_fraction(-m * g.ell(), n);
  } else {
    const std::int64_t lmu = table.log(g.mu());
    for (int m = 1; m < n; ++m) phases[m] = phase_fraction(-m * lmu, n - 1);
  }
  return phases;
}

inline EigenBasis canonical_eigenbasis(const AffineBisection& g,
                                       const DiscreteLogTable& table) {
  if (table.modulus() != g.n()) {
    throw Error(ErrorCode::DimensionMismatch, "log table modulus differs from n");
  }
  Matrix vectors = g.is_translation()
                       ? fourier_vectors(g.n())
                       : fixed_point_vectors(affine_fixed_point(g).index, table);
  return {std::move(vectors), affine_phases(g, table)};
}

inline EigenBasis canonical_eigenbasis(const AffineBisection& g) {
  return canonical_eigenbasis(g, DiscreteLogTable(g.n()));
}

inline EigenBasis canonical_eigenbasis(const GroupElement& e) {
  if (const auto* b = std::get_if<Bisection>(&e)) return canonical_eigenbasis(*b);
  return canonical_eigenbasis(std::get<AffineBisection>(e));
}

struct Tomogram {
  GroupElement element;
  std::vector<double> probabilities;
  std::vector<double> phases;
};

struct TomogramFamily {
  Group group = Group::Symmetric;
  int n = 0;
  std::vector<Tomogram> tomograms;
};

namespace detail {
inline std::vector<double> diagonal_probabilities(const Matrix& phi,
                                                  const Matrix& vectors) {
  const auto n = static_cast<double>(phi.rows());
  const Matrix phi_v = phi * vectors;
  std::vector<double> p(vectors.cols());
  for (Eigen::Index m = 0; m < vectors.cols(); ++m) {
    p[m] = vectors.col(m).dot(phi_v.col(m)).real() / n;
  }
  return p;
}

inline int element_n(const GroupElement& e) {
  return std::visit([](const auto& x) { return x.n(); }, e);
}
}  // namespace detail

/// p_m = (1/n) <m|Phi|m> in the canonical eigenbasis of U(b).
inline Tomogram tomogram(const StateFunction& phi, const GroupElement& element) {
  detail::require_same_n(phi.n(), detail::element_n(element), "tomogram");
  EigenBasis basis = canonical_eigenbasis(element);
  return {element, detail::diagonal_probabilities(phi.matrix(), basis.vectors),
          std::move(basis.phases)};
}

/// Full family over S_n or Aff_n in canonical group order. For Aff_n the
/// n + 1 distinct eigenbases are evaluated once each.
inline TomogramFamily tomogram_family(const StateFunction& phi, Group group,
                                      int max_factorial_n = kDefaultMaxFactorialN) {
  const int n = phi.n();
  TomogramFamily family{group, n, {}};
  if (group == Group::Symmetric) {
    for (auto& b : enumerate_symmetric(n, max_factorial_n)) {
      family.tomograms.push_back(tomogram(phi, GroupElement(std::move(b))));
    }
    return family;
  }
  const auto elements = enumerate_affine(n);
  const DiscreteLogTable table(n);
  const std::vector<double> fourier_p =
      detail::diagonal_probabilities(phi.matrix(), fourier_vectors(n));
  std::vector<std::vector<double>> fixed_p(n);
  for (int x0 = 0; x0 < n; ++x0) {
    fixed_p[x0] =
        detail::diagonal_probabilities(phi.matrix(), fixed_point_vectors(x0, table));
  }
  family.tomograms.reserve(elements.size());
  for (const auto& g : elements) {
    const auto& p = g.is_translation() ? fourier_p : fixed_p[affine_fixed_point(g).index];
    family.tomograms.push_back({g, p, affine_phases(g, table)});
  }
  return family;
}

/// F_phi(b) = (1/n) Tr(Phi U(b)) = (1/n) sum_j Phi(j, sigma(j)).
inline Complex sampling_function(const StateFunction& phi, const GroupElement& element) {
  detail::require_same_n(phi.n(), detail::element_n(element), "sampling_function");
  const Bisection b = as_bisection(element);
  Complex acc = 0.0;
  for (int j = 0; j < b.n(); ++j) acc += phi.matrix()(j, b(j));
  return acc / static_cast<double>(b.n());
}

/// sum_m p_m e^{i theta_m}.
inline Complex sampling_from_tomogram(const Tomogram& t) {
  Complex acc = 0.0;
  for (std::size_t m = 0; m < t.probabilities.size(); ++m) {
    acc += t.probabilities[m] * std::polar(1.0, t.phases[m]);
  }
  return acc;
}

namespace detail {
inline std::size_t affine_index(const AffineBisection& g) {
  return static_cast<std::size_t>(g.mu() - 1) * g.n() + g.ell();
}

/// Maps the family onto canonical group order; throws IncompleteFamily on
/// missing or repeated elements.
inline std::vector<const Tomogram*> order_family(const TomogramFamily& family,
                                                 const Frame& frame) {
  std::vector<const Tomogram*> slots(frame.size(), nullptr);
  std::map<std::vector<int>, std::size_t> sym_index;
  if (family.group == Group::Symmetric) {
    for (std::size_t i = 0; i < frame.size(); ++i) {
      sym_index.emplace(frame.permutations()[i].sigma(), i);
    }
  }
  for (const auto& t : family.tomograms) {
    if (detail::element_n(t.element) != family.n ||
        t.probabilities.size() != static_cast<std::size_t>(family.n) ||
        t.phases.size() != static_cast<std::size_t>(family.n)) {
      throw Error(ErrorCode::DimensionMismatch,
                  "tomogram " + element_id(t.element) + " does not match n = " +
                      std::to_string(family.n));
    }
    std::size_t idx = 0;
    if (family.group == Group::Symmetric) {
      const auto* b = std::get_if<Bisection>(&t.element);
      if (!b) {
        throw Error(ErrorCode::InvalidInput,
                    "affine element in a symmetric family");
      }
      idx = sym_index.at(b->sigma());
    } else {
      const auto* g = std::get_if<AffineBisection>(&t.element);
      if (!g) {
        throw Error(ErrorCode::InvalidInput,
                    "permutation element in an affine family");
      }
      idx = affine_index(*g);
    }
    if (slots[idx]) {
      throw Error(ErrorCode::IncompleteFamily,
                  "element " + element_id(t.element) + " appears twice");
    }
    slots[idx] = &t;
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      throw Error(ErrorCode::IncompleteFamily,
                  "missing tomogram for " + element_id(frame.elements()[i]));
    }
  }
  return slots;
}
}  // namespace detail

/// phi = w * sum_b <chi_b|phi> chi^b with <chi_b|phi> = n sum_m p_m e^{-i theta_m}.
///
/// The sampling functions only see the component of phi in span{chi_b}, so
/// the result is P Phi P + Q Phi Q for the state that generated the family.
inline Matrix reconstruct_state(const TomogramFamily& family,
                                int max_factorial_n = kDefaultMaxFactorialN) {
  Frame frame = Frame::from_group(family.group, family.n, max_factorial_n);
  const auto slots = detail::order_family(family, frame);
  Coefficients c(static_cast<Eigen::Index>(slots.size()));
  const auto n = static_cast<double>(family.n);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    c(static_cast<Eigen::Index>(i)) = n * std::conj(sampling_from_tomogram(*slots[i]));
  }
  return reconstruct(dual_frame(frame), c);
}

struct AdmissibilityVerdict {
  bool admissible = false;
  Matrix phi;              ///< the reconstructed candidate, always filled
  StateCheck check;        ///< Hermiticity, PSD and trace diagnostics
  double witness_value() const noexcept { return check.psd.min_eigenvalue; }
  const Vector& witness() const noexcept { return check.psd.witness; }
};

/// A family is admissible iff its reconstruction is a positive
/// semi-definite groupoid function with trace n.
inline AdmissibilityVerdict validate_tomogram_family(
    const TomogramFamily& family, double tol = kDefaultPsdTolerance,
    int max_factorial_n = kDefaultMaxFactorialN) {
  AdmissibilityVerdict out;
  out.phi = reconstruct_state(family, max_factorial_n);
  out.check = validate_state_matrix(out.phi, tol);
  out.admissible = out.check.ok();
  return out;
}

/// |n F_phi(g) - DFT of the tomogram| for the affine identities.
///
/// mu = 1:  n F = sum_m e^{-2 pi i m ell/n} <psi_m|Phi|psi_m>.
/// mu != 1: n F = Phi(x0, x0) + sum_{m=1}^{n-1} e^{-2 pi i m log(mu)/(n-1)}
///          <u_m|Phi|u_m>, with x0 the fixed point of g.
inline double fourier_identity_residual(const StateFunction& phi,
                                        const AffineBisection& g) {
  const int n = g.n();
  detail::require_same_n(phi.n(), n, "fourier_identity_residual");
  const Matrix& m = phi.matrix();
  const Complex lhs = static_cast<double>(n) * sampling_function(phi, g);
  Complex rhs = 0.0;
  if (g.is_translation()) {
    const Matrix f = fourier_vectors(n);
    for (int k = 0; k < n; ++k) {
      rhs += unit_phase(-static_cast<std::int64_t>(k) * g.ell(), n) *
             f.col(k).dot(m * f.col(k));
    }
  } else {
    const DiscreteLogTable table(n);
    const int x0 = affine_fixed_point(g).index;
    const Matrix u = fixed_point_vectors(x0, table);
    const std::int64_t lmu = table.log(g.mu());
    rhs = m(x0, x0);
    for (int k = 1; k < n; ++k) {
      rhs += unit_phase(-k * lmu, n - 1) * u.col(k).dot(m * u.col(k));
    }
  }
  return std::abs(lhs - rhs);
}

/// Fourier basis, then the fixed-point basis for each x0 in Omega.
///
/// Phases are those of (1, 1) and of (g, x0 (1 - g)) for the primitive
/// root g, one representative per basis.
inline std::vector<EigenBasis> affine_basis_family(int n) {
  if (!is_odd_prime(n)) {
    throw Error(ErrorCode::NotOddPrime,
                "n must be an odd prime, got " + std::to_string(n));
  }
  const DiscreteLogTable table(n);
  std::vector<EigenBasis> out;
  out.push_back(canonical_eigenbasis(AffineBisection(1, 1, n), table));
  const Residue g = table.generator();
  for (int x0 = 0; x0 < n; ++x0) {
    out.push_back(canonical_eigenbasis(AffineBisection(g, mod(x0 * (1 - g), n), n), table));
  }
  return out;
}

/// max over distinct basis pairs of | |<e_j|f_k>|^2 - 1/n |.
inline double max_unbiasedness_deviation(const std::vector<EigenBasis>& bases) {
  double worst = 0.0;
  for (std::size_t a = 0; a < bases.size(); ++a) {
    const double inv_n = 1.0 / bases[a].n();
    for (std::size_t b = a + 1; b < bases.size(); ++b) {
      const Matrix overlap = bases[a].vectors.adjoint() * bases[b].vectors;
      worst = std::max(worst, (overlap.cwiseAbs2().array() - inv_n).abs().maxCoeff());
    }
  }
  return worst;
}

/// S_r(j) = (2 pi / n) * (r * inv2 * j (j - 1) mod n), inv2 = 2^{-1} mod n.
inline double dsf_phase(int r, int j, int n) {
  const Residue inv2 = mod_inverse(2, n);
  const Residue q = mod(mod(r * inv2, n) * mod(static_cast<Residue>(j) * (j - 1), n), n);
  return phase_fraction(q, n);
}

/// U~(r)(k, j) = exp(i (S_r(j) - S_r(k))) delta(k - j - 1).
inline Matrix dsf_translation(int r, int n) {
  Matrix u = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    u(k, j) = std::polar(1.0, dsf_phase(r, j, n) - dsf_phase(r, k, n));
  }
  return u;
}

inline constexpr double kUnbiasednessTolerance = 1e-10;

/// Standard basis followed by the eigenbases of U~(r), r = 0..n-1.
///
/// U~(r) = D_r^dagger X D_r with D_r = diag(e^{i S_r}), so its eigenvectors
/// are D_r^dagger psi_m with the phases of the unit translation.
inline std::vector<EigenBasis> mub_family(int n) {
  if (!is_odd_prime(n)) {
    throw Error(ErrorCode::NotOddPrime,
                "n must be an odd prime, got " + std::to_string(n));
  }
  std::vector<EigenBasis> out;
  EigenBasis standard{Matrix::Identity(n, n), std::vector<double>(n)};
  for (int j = 0; j < n; ++j) standard.phases[j] = phase_fraction(j, n);
  out.push_back(std::move(standard));

  const Matrix f = fourier_vectors(n);
  std::vector<double> shift_phases(n);
  for (int m = 0; m < n; ++m) shift_phases[m] = phase_fraction(-m, n);
  for (int r = 0; r < n; ++r) {
    Matrix v(n, n);
    for (int k = 0; k < n; ++k) {
      v.row(k) = f.row(k) * std::polar(1.0, -dsf_phase(r, k, n));
    }
    EigenBasis basis{std::move(v), shift_phases};
    if (eigen_residual(dsf_translation(r, n), basis) > 1e-12) {
      throw Error(ErrorCode::UnbiasednessFailed,
                  "eigen relation fails for r = " + std::to_string(r));
    }
    out.push_back(std::move(basis));
  }
  const double dev = max_unbiasedness_deviation(out);
  if (dev > kUnbiasednessTolerance) {
    throw Error(ErrorCode::UnbiasednessFailed,
                "max overlap deviation " + std::to_string(dev));
  }
  return out;
}

/// |clock * shift - omega * shift * clock|_max with shift = chi_(1,1),
/// clock = diag(omega^j), omega = e^{2 pi i/n}.
inline double weyl_commutation_check(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "n must be >= 2");
  std::vector<int> s(n);
  for (int j = 0; j < n; ++j) s[j] = (j + 1) % n;
  const Matrix shift = permutation_matrix(Bisection(std::move(s)));
  Matrix clock = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) clock(j, j) = unit_phase(j, n);
  const Complex omega = unit_phase(1, n);
  return (clock * shift - omega * shift * clock).cwiseAbs().maxCoeff();
}

}  // namespace grptomo
