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

// Modular arithmetic over Z_n: primality, inverses, primitive roots and
// table-based discrete logarithms. Everything here is exact integer
// arithmetic; n is small (the affine constructions cap it at a few hundred).

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "grptomo/error.hpp"

namespace grptomo {

using Residue = std::int64_t;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline bool is_odd_prime(std::int64_t n) { return n != 2 && is_prime(n); }

/// Canonical representative of a in {0..n-1}.
inline Residue mod(Residue a, std::int64_t n) {
  Residue r = a % n;
  return r < 0 ? r + n : r;
}

inline Residue mod_pow(Residue base, std::int64_t exp, std::int64_t n) {
  Residue result = 1 % n;
  base = mod(base, n);
  while (exp > 0) {
    if (exp & 1) result = (result * base) % n;
    base = (base * base) % n;
    exp >>= 1;
  }
  return result;
}

inline Residue mod_inverse(Residue a, std::int64_t n) {
  if (n < 2) throw Error(ErrorCode::NotInvertible, "modulus must be >= 2");
  // Extended Euclid on (a mod n, n).
  Residue old_r = mod(a, n), r = n;
  Residue old_s = 1, s = 0;
  while (r != 0) {
    const Residue q = old_r / r;
    Residue t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw Error(ErrorCode::NotInvertible,
                std::to_string(a) + " has no inverse mod " + std::to_string(n) +
                    " (gcd " + std::to_string(old_r) + ")");
  }
  return mod(old_s, n);
}

/// Multiplicative order of a modulo prime n; a must be nonzero mod n.
inline std::int64_t multiplicative_order(Residue a, std::int64_t n) {
  a = mod(a, n);
  if (a == 0) throw Error(ErrorCode::ZeroArgument, "order of 0 is undefined");
  std::int64_t k = 1;
  Residue x = a;
  while (x != 1) {
    x = (x * a) % n;
    ++k;
  }
  return k;
}

/// Smallest residue of full multiplicative order n-1.
inline Residue primitive_root(std::int64_t n) {
  if (!is_odd_prime(n)) {
    throw Error(ErrorCode::NotPrime,
                std::to_string(n) + " is not an odd prime");
  }
  for (Residue g = 2; g < n; ++g) {
    if (multiplicative_order(g, n) == n - 1) return g;
  }
  throw Error(ErrorCode::NotPrime, "no primitive root found");
}

class DiscreteLogTable {
 public:
  /// Builds the table for the smallest primitive root of n.
  explicit DiscreteLogTable(std::int64_t n)
      : DiscreteLogTable(n, primitive_root(n)) {}

  DiscreteLogTable(std::int64_t n, Residue generator)
      : n_(n), generator_(mod(generator, n)), log_of_(n, -1) {
    if (!is_odd_prime(n)) {
      throw Error(ErrorCode::NotPrime,
                  std::to_string(n) + " is not an odd prime");
    }
    Residue x = 1;
    for (std::int64_t e = 0; e < n - 1; ++e) {
      if (log_of_[x] != -1) {
        throw Error(ErrorCode::InvalidInput,
                    std::to_string(generator) + " is not a primitive root mod " +
                        std::to_string(n));
      }
      log_of_[x] = e;
      x = (x * generator_) % n;
    }
  }

  std::int64_t modulus() const noexcept { return n_; }
  Residue generator() const noexcept { return generator_; }

  /// Exponent e in {0..n-2} with generator^e == a (mod n).
  std::int64_t log(Residue a) const {
    a = mod(a, n_);
    if (a == 0) {
      throw Error(ErrorCode::ZeroArgument, "discrete log of 0 is undefined");
    }
    return log_of_[a];
  }

 private:
  std::int64_t n_;
  Residue generator_;
  std::vector<std::int64_t> log_of_;
};

inline std::int64_t discrete_log(const DiscreteLogTable& table, Residue a) {
  return table.log(a);
}

}  // namespace grptomo
