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

TEST_CASE("odd prime predicate", "[finite-field]") {
  CHECK_FALSE(is_odd_prime(2));
  CHECK(is_odd_prime(5));
  CHECK_FALSE(is_odd_prime(9));
  CHECK_FALSE(is_odd_prime(1));
  CHECK_FALSE(is_odd_prime(0));
  CHECK_FALSE(is_odd_prime(-7));
  CHECK(is_odd_prime(101));
  CHECK(is_prime(2));
  for (int n = 3; n < 200; ++n) {
    bool prime = true;
    for (int d = 2; d * d <= n; ++d) prime = prime && n % d != 0;
    CHECK(is_odd_prime(n) == (prime && n % 2 == 1));
  }
}

TEST_CASE("modular inverse", "[finite-field]") {
  CHECK(mod_inverse(1, 7) == 1);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(-4, 7) == oracle::inverse_by_search(-4, 7));
  CHECK_THROWS_CODE(mod_inverse(4, 8), NotInvertible);
  CHECK_THROWS_AS(mod_inverse(0, 5), Error);
  for (int n : {3, 5, 7, 11, 13, 101}) {
    for (int a = 1; a < n; ++a) {
      CHECK(mod_inverse(a, n) == oracle::inverse_by_search(a, n));
    }
  }
}

TEST_CASE("mod keeps residues non-negative", "[finite-field]") {
  CHECK(mod(-1, 5) == 4);
  CHECK(mod(10, 5) == 0);
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_pow(3, 0, 7) == 1);
}

TEST_CASE("primitive root", "[finite-field]") {
  CHECK(primitive_root(3) == 2);
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  for (int n : {11, 13, 17, 19, 23, 101, 199}) {
    CHECK(primitive_root(n) == oracle::primitive_root_by_search(n));
    CHECK(multiplicative_order(primitive_root(n), n) == n - 1);
  }
  CHECK_THROWS_CODE(primitive_root(9), NotPrime);
}

TEST_CASE("discrete log", "[finite-field]") {
  const DiscreteLogTable t(5, 2);
  CHECK(t.log(1) == 0);
  CHECK(t.log(3) == 3);
  CHECK(discrete_log(t, 4) == 2);
  CHECK_THROWS_CODE(t.log(0), ZeroArgument);
  for (int n : {3, 7, 11, 13, 31}) {
    const DiscreteLogTable table(n);
    for (int a = 1; a < n; ++a) {
      const auto k = table.log(a);
      CHECK(k == oracle::log_by_search(table.generator(), a, n));
      CHECK(mod_pow(table.generator(), k, n) == a);
    }
  }
}
