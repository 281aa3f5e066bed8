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
Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}
const Complex I{0.0, 1.0};
}  // namespace

TEST_CASE("convolution is the matrix product", "[algebra]") {
  const AlgebraElement f(m2(1, 2, 3, 4));
  CHECK(convolve(f, AlgebraElement::unit(2)).matrix() == f.matrix());
  CHECK(convolve(f, AlgebraElement(m2(0, 1, 1, 0))).matrix() == m2(2, 1, 4, 3));
  CHECK_THROWS_CODE(convolve(f, AlgebraElement::unit(3)), DimensionMismatch);
  for (const auto& b2 : enumerate_symmetric(3)) {
    for (const auto& b1 : enumerate_symmetric(3)) {
      CHECK(convolve(AlgebraElement::characteristic(b2), AlgebraElement::characteristic(b1))
                .matrix() == AlgebraElement::characteristic(bisection_compose(b2, b1)).matrix());
    }
  }
}

TEST_CASE("element validation", "[algebra]") {
  CHECK_THROWS_CODE(AlgebraElement(Matrix::Zero(2, 3)), NotSquare);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_CODE(AlgebraElement(bad), InvalidInput);
  const auto d = AlgebraElement::delta(3, 2, 0);
  CHECK(d(2, 0) == 1.0);
  CHECK(d.matrix().cwiseAbs().sum() == 1.0);
}

TEST_CASE("involution", "[algebra]") {
  const AlgebraElement h(m2(1, I, -I, 2));
  CHECK(involution(h).matrix() == h.matrix());
  CHECK(involution(AlgebraElement(m2(0, I, 0, 0))).matrix() == m2(0, 0, -I, 0));
  for (const auto& b : enumerate_symmetric(3)) {
    CHECK(involution(AlgebraElement::characteristic(b)).matrix() ==
          AlgebraElement::characteristic(b.inverse()).matrix());
  }
}

TEST_CASE("tracial state and inner product", "[algebra]") {
  for (int n : {1, 2, 5}) CHECK(tracial_state(AlgebraElement::unit(n)) == 1.0);
  CHECK(tracial_state(AlgebraElement(m2(1, 5, 7, 3))) == 2.0);
  CHECK(tracial_state(AlgebraElement::characteristic(Bisection({1, 2, 0}))) == 0.0);
  CHECK(hs_inner(AlgebraElement::unit(3), AlgebraElement::unit(3)) == 3.0);
  const auto perms = enumerate_symmetric(3);
  for (const auto& b1 : perms) {
    for (const auto& b2 : perms) {
      int agree = 0;
      for (int j = 0; j < 3; ++j) agree += b1(j) == b2(j);
      CHECK(hs_inner(AlgebraElement::characteristic(b1), AlgebraElement::characteristic(b2)) ==
            Complex(agree));
    }
  }
  // Conjugate-linear in the first slot.
  CHECK(hs_inner(AlgebraElement(m2(I, 0, 0, 0)), AlgebraElement(m2(1, 0, 0, 0))) == -I);
}

TEST_CASE("state evaluation", "[algebra]") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 4}) {
    const StateFunction phi = random_state(n, 11 + n);
    CHECK_THAT(std::abs(evaluate_state(phi, AlgebraElement::unit(n)) - 1.0), WithinAbs(0, 1e-12));
  }
  const auto mixed = StateFunction::maximally_mixed(3);
  for (const auto& b : enumerate_symmetric(3)) {
    CHECK_THAT(evaluate_state(mixed, AlgebraElement::characteristic(b)).real(),
               WithinAbs(b.fixed_points() / 3.0, 1e-15));
  }
  Matrix pure = Matrix::Zero(3, 3);
  pure(0, 0) = 3.0;
  CHECK(evaluate_state(StateFunction(pure), AlgebraElement::delta(3, 0, 0)) == 1.0);
}

TEST_CASE("positive semi-definiteness", "[algebra]") {
  CHECK(is_positive_semidefinite(Matrix::Identity(3, 3)));
  CHECK_FALSE(is_positive_semidefinite(m2(1, 2, 2, 1)));
  CHECK(is_positive_semidefinite(m2(1, 1, 1, 1)));
  const PsdCheck c = check_positive_semidefinite(m2(1, 2, 2, 1));
  CHECK_THAT(c.min_eigenvalue, WithinAbs(-1.0, 1e-12));
  // The witness is a unit vector with <v|A|v> = lambda_min.
  const Matrix a = m2(1, 2, 2, 1);
  CHECK_THAT(c.witness.norm(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(c.witness.dot(a * c.witness).real(), WithinAbs(-1.0, 1e-12));
  CHECK_FALSE(check_positive_semidefinite(m2(1, I, I, 1)).hermitian);
  CHECK_THROWS_CODE(check_positive_semidefinite(Matrix::Zero(2, 3)), NotSquare);
}

TEST_CASE("state validation lists violations", "[algebra]") {
  CHECK(validate_state_matrix(Matrix::Identity(3, 3)).ok());
  const StateCheck trace = validate_state_matrix(2.0 * Matrix::Identity(3, 3));
  CHECK_FALSE(trace.ok());
  CHECK(trace.violations.size() == 1);
  Matrix bad(3, 3);
  bad << 1, 2, 0, 2, 1, 0, 0, 0, 1;
  const StateCheck neg = validate_state_matrix(bad);
  CHECK_FALSE(neg.psd.positive);
  CHECK_THROWS_CODE(StateFunction(bad), InvalidInput);
  CHECK_NOTHROW(StateFunction::from_density(Matrix::Identity(2, 2) * 0.5));
}

TEST_CASE("random states", "[algebra]") {
  const auto a = random_state(3, 1);
  const auto b = random_state(3, 1);
  CHECK(a.matrix() == b.matrix());
  CHECK(random_state(3, 2).matrix() != a.matrix());
  for (int n : {2, 3, 5, 8}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto s = random_state(n, seed);
      CHECK(is_positive_semidefinite(s.matrix()));
      CHECK_THAT(s.matrix().trace().real(), WithinAbs(n, 1e-12));
    }
  }
  CHECK(std::abs(random_state(1, 5).matrix()(0, 0) - 1.0) < 1e-15);
  CHECK_THROWS_CODE(random_state(0, 1), InvalidInput);
}

TEST_CASE("isotypic projectors", "[algebra]") {
  for (int n : {3, 4, 6}) {
    std::mt19937_64 rng(n);
    const Matrix psi = random_gaussian_matrix(n, rng);
    const Matrix p = trivial_projector(n);
    const Matrix q = Matrix::Identity(n, n) - p;
    CHECK(oracle::max_abs(project_trivial(psi) - p * psi * p) < 1e-13);
    CHECK(oracle::max_abs(project_standard(psi) - q * psi * q) < 1e-13);
  }
}
