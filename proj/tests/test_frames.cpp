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

#include "catch_support.hpp"
#include "oracles.hpp"

using namespace grptomo;
using Catch::Matchers::WithinAbs;

namespace {
struct Case {
  Group group;
  int n;
};

const Case kCases[] = {{Group::Symmetric, 3}, {Group::Symmetric, 4}, {Group::Symmetric, 5},
                       {Group::Affine, 3},    {Group::Affine, 5},    {Group::Affine, 7}};

Matrix random_matrix(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_gaussian_matrix(n, rng);
}

// psi = 1 v^T with sum(v) = 0: orthogonal to every chi_b.
Matrix off_span_vector(int n) {
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    m(k, 0) = 1.0;
    m(k, 1) = -1.0;
  }
  return m;
}

Matrix pseudo_inverse(const Matrix& s) {
  return s.completeOrthogonalDecomposition().pseudoInverse();
}
}  // namespace

TEST_CASE("frames from groups", "[frames]") {
  const Frame s3 = frame_from_symmetric(3);
  CHECK(s3.size() == 6);
  CHECK(s3.is_group_frame());
  CHECK_THAT(s3.measure_weight(), WithinAbs(1.0 / 6.0, 1e-16));
  for (std::size_t i = 0; i < s3.size(); ++i) CHECK(hs_norm2(s3.vector(i)) == 3.0);
  CHECK(frame_from_affine(5).size() == 20);
  CHECK_THROWS_CODE(frame_from_affine(6), NotOddPrime);
  CHECK_THROWS_CODE(frame_from_symmetric(2), Unsupported);
}

TEST_CASE("analysis", "[frames]") {
  const Frame f = frame_from_symmetric(3);
  CHECK(analysis(f, Matrix::Zero(3, 3)).isZero());
  const auto& perms = f.permutations();
  const Coefficients c0 = analysis(f, permutation_matrix(perms[2]));
  for (std::size_t i = 0; i < perms.size(); ++i) {
    int agree = 0;
    for (int j = 0; j < 3; ++j) agree += perms[i](j) == perms[2](j);
    CHECK(c0(i) == Complex(agree));
  }
  const Coefficients ci = analysis(f, Matrix::Identity(3, 3));
  for (std::size_t i = 0; i < perms.size(); ++i) CHECK(ci(i) == Complex(perms[i].fixed_points()));
  const Matrix psi = random_matrix(3, 4);
  const Coefficients c = analysis(f, psi);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(std::abs(c(i) - hs_inner(f.vector(i), psi)) < 1e-13);
  }
}

TEST_CASE("synthesis", "[frames]") {
  const Frame f = frame_from_symmetric(3);
  CHECK(synthesis(f, Coefficients::Zero(6)).isZero());
  Coefficients e = Coefficients::Zero(6);
  e(4) = 1.0;
  CHECK(oracle::max_abs(synthesis(f, e) - f.vector(4) / 6.0) < 1e-16);
  CHECK_THROWS_CODE(synthesis(f, Coefficients::Zero(5)), LengthMismatch);
  // <c, T psi> = w <T* c, psi> with T* the synthesis up to the weight.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Coefficients c(6);
  for (auto& x : c) x = Complex(normal(rng), normal(rng));
  const Matrix psi = random_matrix(3, 9);
  const Complex lhs = c.dot(analysis(f, psi));
  const Complex rhs = 6.0 * hs_inner(synthesis(f, c), psi);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("metric operator against brute force", "[frames]") {
  for (const auto& [group, n] : kCases) {
    CAPTURE(to_string(group), n);
    const Frame f = Frame::from_group(group, n);
    CHECK(metric_apply_bruteforce(f, Matrix::Zero(n, n)).isZero());
    const Matrix ones = Matrix::Ones(n, n);
    CHECK(oracle::max_abs(metric_apply_bruteforce(f, ones) - ones) < 1e-12);
    CHECK(oracle::max_abs(metric_apply_closed(ones) - ones) < 1e-12);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Matrix psi = random_matrix(n, 100 + s);
      const Matrix brute = metric_apply_bruteforce(f, psi);
      CHECK(oracle::max_abs(brute - oracle::metric_by_sum(f, psi)) < 1e-12);
      CHECK(oracle::max_abs(metric_apply_closed(psi) - brute) < 1e-12);
      // The single-projector form agrees only on the span.
      const Matrix on_span = project_onto_span(psi);
      CHECK(oracle::max_abs(metric_apply_extended(on_span) - metric_apply_bruteforce(f, on_span)) <
            1e-12);
    }
    const Matrix off = off_span_vector(n);
    CHECK(oracle::max_abs(metric_apply_bruteforce(f, off)) < 1e-12);
    CHECK(oracle::max_abs(metric_apply_extended(off) - off / (n - 1.0)) < 1e-12);
  }
}

TEST_CASE("metric on the standard component", "[frames]") {
  for (int n : {3, 4, 5}) {
    // Zero row and column sums, zero trace.
    Matrix psi = project_standard(random_matrix(n, n));
    psi -= Matrix::Identity(n, n) * (psi.trace() / static_cast<double>(n));
    psi = project_standard(psi);
    const Frame f = frame_from_symmetric(n);
    CHECK(oracle::max_abs(metric_apply_bruteforce(f, psi) - psi / (n - 1.0)) < 1e-12);
    CHECK(oracle::max_abs(metric_inverse_apply(psi) - (n - 1.0) * psi) < 1e-12);
    CHECK(oracle::max_abs(metric_pseudo_inverse_apply(psi) - (n - 1.0) * psi) < 1e-12);
    const Matrix ones = Matrix::Ones(n, n);
    CHECK(oracle::max_abs(metric_inverse_apply(ones) - ones) < 1e-12);
  }
}

TEST_CASE("single-projector inverse inverts the single-projector metric", "[frames]") {
  for (int n : {3, 4, 7}) {
    const Matrix psi = random_matrix(n, 20 + n);
    CHECK(oracle::max_abs(metric_inverse_apply(metric_apply_extended(psi)) - psi) < 1e-12);
    CHECK(oracle::max_abs(metric_apply_extended(metric_inverse_apply(psi)) - psi) < 1e-12);
  }
  CHECK_THROWS_CODE(metric_apply_closed(Matrix::Zero(2, 2)), Unsupported);
}

TEST_CASE("pseudo-inverse of the true metric", "[frames]") {
  for (const auto& [group, n] : kCases) {
    CAPTURE(to_string(group), n);
    const Frame f = Frame::from_group(group, n);
    const Matrix psi = random_matrix(n, 5);
    CHECK(oracle::max_abs(metric_pseudo_inverse_apply(metric_apply_closed(psi)) -
                          project_onto_span(psi)) < 1e-12);
    const Matrix dense_plus = pseudo_inverse(oracle::dense_metric(f));
    const Vector v = dense_plus * vectorize(psi);
    CHECK(oracle::max_abs(unvectorize(v, n) - metric_pseudo_inverse_apply(psi)) < 1e-10);
  }
}

TEST_CASE("metric matrix and spectrum", "[frames]") {
  for (const auto& [group, n] : kCases) {
    CAPTURE(to_string(group), n);
    const Frame f = Frame::from_group(group, n);
    const Matrix s = metric_matrix(f);
    CHECK(oracle::max_abs(s - oracle::dense_metric(f)) < 1e-13);
    const auto spec = oracle::grouped_spectrum(s);
    REQUIRE(spec.size() == 3);
    CHECK_THAT(spec[0].first, WithinAbs(0.0, 1e-10));
    CHECK(spec[0].second == 2 * (n - 1));
    CHECK_THAT(spec[1].first, WithinAbs(1.0 / (n - 1), 1e-10));
    CHECK(spec[1].second == (n - 1) * (n - 1));
    CHECK_THAT(spec[2].first, WithinAbs(1.0, 1e-10));
    CHECK(spec[2].second == 1);

    const FrameBounds b = frame_bounds_empirical(f);
    CHECK_THAT(b.lower, WithinAbs(0.0, 1e-10));
    CHECK_THAT(b.lower_on_span, WithinAbs(1.0 / (n - 1), 1e-10));
    CHECK_THAT(b.upper, WithinAbs(1.0, 1e-10));
    CHECK(b.upper <= n * n);
    CHECK(b.span_dimension == (n - 1) * (n - 1) + 1);
    CHECK_FALSE(b.is_frame());
    CHECK(metric_spectrum(f).size() == n * n);
  }
}

TEST_CASE("group dual frame", "[frames]") {
  for (const auto& [group, n] : kCases) {
    CAPTURE(to_string(group), n);
    const Frame f = Frame::from_group(group, n);
    const DualFrame d = dual_frame(f);
    const Matrix p = trivial_projector(n);
    const Matrix splus = pseudo_inverse(oracle::dense_metric(f));
    for (std::size_t i = 0; i < f.size(); i += std::max<std::size_t>(1, f.size() / 7)) {
      const Matrix u = f.vector(i);
      CHECK(oracle::max_abs(d.dual_vector(i) - ((n - 1.0) * u - (n - 2.0) * p)) < 1e-12);
      CHECK(oracle::max_abs(d.dual_vector(i) - unvectorize(splus * vectorize(u), n)) < 1e-10);
      CHECK(oracle::max_abs(d.dual_vector(i) - metric_inverse_apply(u)) < 1e-12);
    }
    const Matrix psi = random_matrix(n, 17);
    const Coefficients da = d.dual_analysis(psi);
    for (std::size_t i = 0; i < f.size(); i += 3) {
      CHECK(std::abs(da(i) - hs_inner(d.dual_vector(i), psi)) < 1e-11);
    }
  }
}

TEST_CASE("resolution of identity holds on the span", "[frames]") {
  for (const auto& [group, n] : kCases) {
    CAPTURE(to_string(group), n);
    const Frame f = Frame::from_group(group, n);
    const DualFrame d = dual_frame(f);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        const Matrix e = AlgebraElement::delta(n, k, j).matrix();
        const Matrix target = project_onto_span(e);
        CHECK(oracle::max_abs(reconstruct(d, analysis(f, e)) - target) < 1e-10);
        CHECK(oracle::max_abs(synthesis(f, d.dual_analysis(e)) - target) < 1e-10);
      }
    }
    // Off the span the matrix units are not recovered.
    CHECK(resolution_residual(d, ResolutionOrder::FrameThenDual) > 0.1);
    CHECK(resolution_residual(d, ResolutionOrder::DualThenFrame) > 0.1);
  }
}

TEST_CASE("reconstruction", "[frames]") {
  for (const auto& [group, n] : kCases) {
    CAPTURE(to_string(group), n);
    const Frame f = Frame::from_group(group, n);
    const DualFrame d = dual_frame(f);
    const Matrix chi = f.vector(f.size() / 2);
    CHECK(oracle::max_abs(reconstruct(d, analysis(f, chi)) - chi) < 1e-10);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Matrix psi = random_matrix(n, 300 + s);
      const Matrix in_span = project_onto_span(psi);
      CHECK(oracle::max_abs(reconstruct(d, analysis(f, in_span)) - in_span) < 1e-10);
      CHECK(oracle::max_abs(reconstruct(d, analysis(f, psi)) - in_span) < 1e-10);
    }
    CHECK_THROWS_CODE(reconstruct(d, Coefficients::Zero(1)), LengthMismatch);
  }
}

TEST_CASE("reconstruction round trip for larger affine groups", "[frames]") {
  for (int n : {11, 13}) {
    const Frame f = frame_from_affine(n);
    const DualFrame d = dual_frame(f);
    const Matrix psi = project_onto_span(random_matrix(n, n));
    CHECK(oracle::max_abs(reconstruct(d, analysis(f, psi)) - psi) < 1e-10);
  }
  for (int n : {6}) {
    const Frame f = frame_from_symmetric(n);
    const DualFrame d = dual_frame(f);
    const Matrix psi = project_onto_span(random_matrix(n, n));
    CHECK(oracle::max_abs(reconstruct(d, analysis(f, psi)) - psi) < 1e-10);
  }
}

TEST_CASE("tight frame of matrix units", "[frames]") {
  const int n = 3;
  std::vector<AlgebraElement> units;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) units.push_back(AlgebraElement::delta(n, k, j));
  const Frame f = Frame::generic(units);
  CHECK_FALSE(f.is_group_frame());
  CHECK_THAT(f.measure_weight(), WithinAbs(1.0 / 9.0, 1e-16));
  const FrameBounds b = frame_bounds_empirical(f);
  CHECK_THAT(b.lower, WithinAbs(1.0 / 9.0, 1e-14));
  CHECK_THAT(b.upper, WithinAbs(1.0 / 9.0, 1e-14));
  CHECK(b.is_frame());
  const DualFrame d = dual_frame(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(oracle::max_abs(d.dual_vector(i) - 9.0 * f.vector(i)) < 1e-12);
  }
  CHECK(resolution_residual(d, ResolutionOrder::FrameThenDual) < 1e-12);
  CHECK(resolution_residual(d, ResolutionOrder::DualThenFrame) < 1e-12);
  const Matrix psi = random_matrix(n, 1);
  CHECK(oracle::max_abs(reconstruct(d, analysis(f, psi)) - psi) < 1e-12);
}

TEST_CASE("generic frames that do not span are rejected", "[frames]") {
  std::vector<AlgebraElement> three{AlgebraElement::delta(2, 0, 0), AlgebraElement::delta(2, 0, 1),
                                    AlgebraElement::delta(2, 1, 0)};
  CHECK_THROWS_CODE(Frame::generic(three), IllConditioned);
  CHECK_THROWS_CODE(Frame::generic({}), InvalidInput);
}

TEST_CASE("frame energy and bounds", "[frames]") {
  for (const auto& [group, n] : kCases) {
    const Frame f = Frame::from_group(group, n);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Matrix psi = random_matrix(n, 700 + s);
      const double e = frame_energy(f, psi);
      CHECK_THAT(e, WithinAbs(hs_inner(psi, metric_apply_closed(psi)).real(), 1e-10));
      CHECK(e <= n * n * hs_norm2(psi));
      const Matrix in_span = project_onto_span(psi);
      CHECK(frame_energy(f, in_span) >= hs_norm2(in_span) / (n - 1) * (1 - 1e-12));
    }
    CHECK(frame_energy(f, off_span_vector(n)) < 1e-20);
  }
}
