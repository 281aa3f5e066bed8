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

// The pair groupoid G(Omega) => Omega over Omega = {0..n-1}: transitions
// (k, j): j -> k with partial composition, and its bisections. For the pair
// groupoid a bisection is the graph of a permutation sigma, so that is all we
// store. The affine subgroup Aff_n acts as j -> mu*j + ell over Z_n.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "grptomo/error.hpp"
#include "grptomo/finite_field.hpp"

namespace grptomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Outcome {
  int index = 0;
  friend bool operator==(Outcome, Outcome) = default;
};

/// Arrow (k, j): j -> k, stored in that (target, source) order.
struct Transition {
  Outcome target;
  Outcome source;

  bool is_unit() const noexcept { return target == source; }
  friend bool operator==(const Transition&, const Transition&) = default;
};

inline Transition make_transition(int k, int j) { return {{k}, {j}}; }

/// beta o alpha, defined when source(beta) == target(alpha).
inline Transition compose(const Transition& beta, const Transition& alpha) {
  if (beta.source != alpha.target) {
    throw Error(ErrorCode::NotComposable,
                "source " + std::to_string(beta.source.index) +
                    " != target " + std::to_string(alpha.target.index));
  }
  return {beta.target, alpha.source};
}

inline Transition inverse(const Transition& alpha) {
  return {alpha.source, alpha.target};
}

inline Transition unit(Outcome x) { return {x, x}; }

class Bisection {
 public:
  explicit Bisection(std::vector<int> sigma) : sigma_(std::move(sigma)) {
    std::vector<char> seen(sigma_.size(), 0);
    for (int v : sigma_) {
      if (v < 0 || v >= static_cast<int>(sigma_.size()) || seen[v]) {
        throw Error(ErrorCode::InvalidInput, "sigma is not a bijection");
      }
      seen[v] = 1;
    }
  }

  static Bisection identity(int n) {
    std::vector<int> s(n);
    std::iota(s.begin(), s.end(), 0);
    return Bisection(std::move(s));
  }

  int n() const noexcept { return static_cast<int>(sigma_.size()); }
  int operator()(int j) const { return sigma_[j]; }
  const std::vector<int>& sigma() const noexcept { return sigma_; }

  /// The transition b_s(j) = (sigma(j), j) of the source section.
  Transition at_source(int j) const { return make_transition(sigma_[j], j); }

  Bisection inverse() const {
    std::vector<int> inv(sigma_.size());
    for (int j = 0; j < n(); ++j) inv[sigma_[j]] = j;
    return Bisection(std::move(inv));
  }

  int fixed_points() const {
    int c = 0;
    for (int j = 0; j < n(); ++j) c += sigma_[j] == j;
    return c;
  }

  friend bool operator==(const Bisection&, const Bisection&) = default;
  friend auto operator<=>(const Bisection& a, const Bisection& b) {
    return a.sigma_ <=> b.sigma_;
  }

 private:
  std::vector<int> sigma_;
};

/// Group law of bisections: sigma of the result is sigma_b2 o sigma_b1.
inline Bisection bisection_compose(const Bisection& b2, const Bisection& b1) {
  if (b2.n() != b1.n()) {
    throw Error(ErrorCode::DimensionMismatch, "bisections over different sets");
  }
  std::vector<int> s(b1.n());
  for (int j = 0; j < b1.n(); ++j) s[j] = b2(b1(j));
  return Bisection(std::move(s));
}

/// Element (mu, ell) of Aff_n acting as j -> mu*j + ell mod n.
class AffineBisection {
 public:
  AffineBisection(Residue mu, Residue ell, std::int64_t n)
      : mu_(mod(mu, n)), ell_(mod(ell, n)), n_(n) {
    if (!is_odd_prime(n)) {
      throw Error(ErrorCode::NotOddPrime,
                  "n must be an odd prime, got " + std::to_string(n));
    }
    if (mu_ == 0) throw Error(ErrorCode::InvalidInput, "mu must be nonzero");
  }

  Residue mu() const noexcept { return mu_; }
  Residue ell() const noexcept { return ell_; }
  int n() const noexcept { return static_cast<int>(n_); }

  int operator()(int j) const {
    return static_cast<int>(mod(mu_ * j + ell_, n_));
  }

  bool is_translation() const noexcept { return mu_ == 1; }

  Bisection to_bisection() const {
    std::vector<int> s(n_);
    for (int j = 0; j < n(); ++j) s[j] = (*this)(j);
    return Bisection(std::move(s));
  }

  friend bool operator==(const AffineBisection&,
                         const AffineBisection&) = default;

 private:
  Residue mu_;
  Residue ell_;
  std::int64_t n_;
};

inline AffineBisection affine_compose(const AffineBisection& g2,
                                      const AffineBisection& g1) {
  if (g2.n() != g1.n()) {
    throw Error(ErrorCode::DimensionMismatch, "affine maps over different Z_n");
  }
  const std::int64_t n = g1.n();
  return AffineBisection(g2.mu() * g1.mu() % n,
                         (g2.mu() * g1.ell() + g2.ell()) % n, n);
}

inline constexpr int kDefaultMaxFactorialN = 8;
inline constexpr int kDefaultMaxAffineN = 199;

/// All n! bisections in lexicographic order of sigma.
inline std::vector<Bisection> enumerate_symmetric(
    int n, int max_n = kDefaultMaxFactorialN) {
  if (n <= 2) {
    throw Error(ErrorCode::Unsupported,
                "the permutation frame requires n > 2, got " +
                    std::to_string(n));
  }
  if (n > max_n) {
    throw Error(ErrorCode::TooLarge, "n = " + std::to_string(n) +
                                         " exceeds the S_n enumeration cap " +
                                         std::to_string(max_n));
  }
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::vector<Bisection> out;
  do {
    out.emplace_back(s);
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

/// All n(n-1) elements of Aff_n ordered by (mu, ell).
inline std::vector<AffineBisection> enumerate_affine(
    int n, int max_n = kDefaultMaxAffineN) {
  if (!is_odd_prime(n)) {
    throw Error(ErrorCode::NotOddPrime,
                "n must be an odd prime, got " + std::to_string(n));
  }
  if (n > max_n) {
    throw Error(ErrorCode::TooLarge, "n = " + std::to_string(n) +
                                         " exceeds the Aff_n cap " +
                                         std::to_string(max_n));
  }
  std::vector<AffineBisection> out;
  out.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int mu = 1; mu < n; ++mu) {
    for (int ell = 0; ell < n; ++ell) out.emplace_back(mu, ell, n);
  }
  return out;
}

/// U(b)[k][j] = 1 iff k = sigma_b(j). This is also the matrix of chi_b.
inline Matrix permutation_matrix(const Bisection& b) {
  Matrix u = Matrix::Zero(b.n(), b.n());
  for (int j = 0; j < b.n(); ++j) u(b(j), j) = 1.0;
  return u;
}

inline Matrix permutation_matrix(const AffineBisection& g) {
  return permutation_matrix(g.to_bisection());
}

/// Unique solution of mu*j + ell = j, i.e. j = -ell/(mu-1).
inline Outcome affine_fixed_point(const AffineBisection& g) {
  if (g.is_translation()) {
    throw Error(ErrorCode::NoUniqueFixedPoint,
                g.ell() == 0 ? "identity fixes every point"
                             : "translation has no fixed point");
  }
  const std::int64_t n = g.n();
  const Residue x0 = mod(-g.ell() * mod_inverse(g.mu() - 1, n), n);
  return {static_cast<int>(x0)};
}

enum class Group { Symmetric, Affine };

inline std::string_view to_string(Group g) {
  return g == Group::Symmetric ? "symmetric" : "affine";
}

inline Group parse_group(std::string_view s) {
  if (s == "symmetric") return Group::Symmetric;
  if (s == "affine") return Group::Affine;
  throw Error(ErrorCode::InvalidInput,
              "group must be 'symmetric' or 'affine', got '" + std::string(s) +
                  "'");
}

using GroupElement = std::variant<Bisection, AffineBisection>;

inline Bisection as_bisection(const GroupElement& e) {
  if (const auto* b = std::get_if<Bisection>(&e)) return *b;
  return std::get<AffineBisection>(e).to_bisection();
}

inline std::vector<GroupElement> enumerate_group(
    Group group, int n, int max_factorial_n = kDefaultMaxFactorialN) {
  std::vector<GroupElement> out;
  if (group == Group::Symmetric) {
    for (auto& b : enumerate_symmetric(n, max_factorial_n)) {
      out.emplace_back(std::move(b));
    }
  } else {
    for (auto& g : enumerate_affine(n)) out.emplace_back(g);
  }
  return out;
}

// One-line notation "2 0 1" and affine notation "a:mu,ell".

inline std::string to_string(const Bisection& b) {
  std::string s;
  for (int j = 0; j < b.n(); ++j) {
    if (j) s += ' ';
    s += std::to_string(b(j));
  }
  return s;
}

inline std::string to_string(const AffineBisection& g) {
  return "a:" + std::to_string(g.mu()) + "," + std::to_string(g.ell());
}

inline Bisection parse_permutation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<int> s;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw Error(ErrorCode::InvalidInput, "bad permutation entry '" + tok + "'");
    }
    s.push_back(v);
  }
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "empty permutation");
  return Bisection(std::move(s));
}

inline AffineBisection parse_affine(std::string_view text, int n) {
  if (text.substr(0, 2) != "a:") {
    throw Error(ErrorCode::InvalidInput,
                "affine element must look like a:mu,ell");
  }
  const std::string body(text.substr(2));
  const auto comma = body.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::InvalidInput, "missing ',' in '" + body + "'");
  }
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string a = body.substr(0, comma), b = body.substr(comma + 1);
    const long long mu = std::stoll(a, &u1);
    const long long ell = std::stoll(b, &u2);
    if (u1 != a.size() || u2 != b.size()) throw std::invalid_argument(body);
    if (mu <= 0 || mu >= n || ell < 0 || ell >= n) {
      throw Error(ErrorCode::InvalidInput,
                  "affine element out of range: '" + std::string(text) + "'");
    }
    return AffineBisection(mu, ell, n);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::InvalidInput,
                "bad affine element '" + std::string(text) + "'");
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::InvalidInput,
                "bad affine element '" + std::string(text) + "'");
  }
}

/// Element identifier used in tomogram files: "perm:2 0 1" or "a:mu,ell".
inline std::string element_id(const GroupElement& e) {
  if (const auto* b = std::get_if<Bisection>(&e)) return "perm:" + to_string(*b);
  return to_string(std::get<AffineBisection>(e));
}

}  // namespace grptomo
