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

// File formats.
//
// State JSON:    {"n": 3, "phi": [[[re, im], ...], ...]}, row-major phi[j][k].
// Tomogram CSV:  optional header, then one row per group element:
//                element,theta_0..theta_{n-1},p_0..p_{n-1}
//                where element is "perm:2 0 1" or "a:mu,ell" (quoted, since
//                it contains a comma). Floats use 17 significant digits.

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "grptomo/algebra.hpp"
#include "grptomo/error.hpp"
#include "grptomo/groupoid.hpp"
#include "grptomo/tomography.hpp"

namespace grptomo::io {

using nlohmann::json;

/// "%.17g", round-trip exact for doubles.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {
inline void dump_json(const json& j, int indent, int depth, std::string& out) {
  // indent < 0 gives the compact single-line form.
  const bool compact = indent < 0;
  const std::string nl = compact ? "" : "\n";
  const std::string pad(compact ? 0 : static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(compact ? 0 : static_cast<std::size_t>(indent * depth), ' ');
  if (j.is_number_float()) {
    out += format_double(j.get<double>());
  } else if (j.is_array() && !j.empty()) {
    out += "[" + nl;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      dump_json(j[i], indent, depth + 1, out);
      out += (i + 1 < j.size() ? "," : "") + nl;
    }
    out += close + "]";
  } else if (j.is_object() && !j.empty()) {
    out += "{" + nl;
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + json(key).dump() + (compact ? ":" : ": ");
      dump_json(value, indent, depth + 1, out);
      out += (++i < j.size() ? "," : "") + nl;
    }
    out += close + "}";
  } else {
    out += j.dump();
  }
}
}  // namespace detail

/// Like json::dump(indent) but with floats at 17 significant digits.
inline std::string dump_json(const json& j, int indent = 2) {
  std::string out;
  detail::dump_json(j, indent, 0, out);
  return indent < 0 ? out : out + "\n";
}

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

inline json state_to_json(const Matrix& phi) {
  return {{"n", phi.rows()}, {"phi", matrix_to_json(phi)}};
}

/// Parses the matrix of a state file without checking state invariants.
inline Matrix matrix_from_state_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("phi")) {
    throw Error(ErrorCode::InvalidInput, "state JSON needs keys 'n' and 'phi'");
  }
  if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw Error(ErrorCode::InvalidInput, "'n' must be a positive integer");
  }
  const int n = j["n"].get<int>();
  const json& rows = j["phi"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidInput, "'phi' must have n rows");
  }
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::InvalidInput,
                  "row " + std::to_string(r) + " must have n entries");
    }
    for (int c = 0; c < n; ++c) {
      const json& z = row[c];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw Error(ErrorCode::InvalidInput, "entries must be [re, im] pairs");
      }
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

struct StateReadResult {
  Matrix phi;
  StateCheck check;
};

/// Reads and validates a state; check.violations lists what failed.
inline StateReadResult read_state(const json& j, double tol = kDefaultPsdTolerance) {
  StateReadResult out{matrix_from_state_json(j), {}};
  out.check = validate_state_matrix(out.phi, tol);
  return out;
}

inline StateReadResult read_state(const std::string& text,
                                  double tol = kDefaultPsdTolerance) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return read_state(j, tol);
}

namespace detail {
inline bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

inline std::string quote(const std::string& s) {
  if (!needs_quotes(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (in_quotes) throw Error(ErrorCode::InvalidInput, "unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

inline double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidInput, "bad number '" + s + "'");
  }
  return v;
}

inline double phase_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}
}  // namespace detail

inline std::string write_tomogram_csv(const TomogramFamily& family) {
  std::ostringstream out;
  out << "element";
  for (int m = 0; m < family.n; ++m) out << ",theta_" << m;
  for (int m = 0; m < family.n; ++m) out << ",p_" << m;
  out << '\n';
  for (const auto& t : family.tomograms) {
    out << detail::quote(element_id(t.element));
    for (double th : t.phases) out << ',' << format_double(th);
    for (double p : t.probabilities) out << ',' << format_double(p);
    out << '\n';
  }
  return out.str();
}

inline constexpr double kProbabilityNegTolerance = 1e-12;
inline constexpr double kProbabilitySumTolerance = 1e-10;
inline constexpr double kPhaseTolerance = 1e-9;

/// Parses a tomogram CSV, enforcing the probability invariants, canonical
/// phases and complete coverage of S_n or Aff_n (IncompleteFamily otherwise).
inline TomogramFamily read_tomogram_csv(const std::string& text,
                                        int max_factorial_n = kDefaultMaxFactorialN) {
  std::istringstream in(text);
  std::string line;
  TomogramFamily family;
  bool have_group = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = detail::split_csv_line(line);
    if (fields.front() == "element") continue;
    if ((fields.size() - 1) % 2 != 0 || fields.size() < 3) {
      throw Error(ErrorCode::InvalidInput,
                  "line " + std::to_string(line_no) + ": expected 1 + 2n fields");
    }
    const int n = static_cast<int>((fields.size() - 1) / 2);
    const std::string& id = fields.front();
    const Group group = id.rfind("perm:", 0) == 0 ? Group::Symmetric : Group::Affine;
    if (!have_group) {
      family.group = group;
      family.n = n;
      have_group = true;
    } else if (group != family.group || n != family.n) {
      throw Error(ErrorCode::InvalidInput,
                  "line " + std::to_string(line_no) + ": mixed groups or sizes");
    }
    GroupElement element = group == Group::Symmetric
                               ? GroupElement(parse_permutation(id.substr(5)))
                               : GroupElement(parse_affine(id, n));
    if (std::visit([](const auto& x) { return x.n(); }, element) != n) {
      throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) +
                                               ": element size differs from n");
    }
    Tomogram t{std::move(element), std::vector<double>(n), std::vector<double>(n)};
    double total = 0.0;
    for (int m = 0; m < n; ++m) {
      t.phases[m] = detail::parse_double(fields[1 + m]);
      t.probabilities[m] = detail::parse_double(fields[1 + n + m]);
      if (t.probabilities[m] < -kProbabilityNegTolerance) {
        throw Error(ErrorCode::InvalidInput,
                    "line " + std::to_string(line_no) + ": negative probability");
      }
      total += t.probabilities[m];
    }
    if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
      throw Error(ErrorCode::InvalidInput, "line " + std::to_string(line_no) +
                                               ": probabilities sum to " +
                                               format_double(total));
    }
    const auto canonical = canonical_eigenbasis(t.element).phases;
    for (int m = 0; m < n; ++m) {
      if (detail::phase_distance(canonical[m], t.phases[m]) > kPhaseTolerance) {
        throw Error(ErrorCode::InvalidInput,
                    "line " + std::to_string(line_no) + ": theta_" +
                        std::to_string(m) + " is not the canonical phase");
      }
    }
    family.tomograms.push_back(std::move(t));
  }
  if (!have_group) throw Error(ErrorCode::IncompleteFamily, "no tomogram rows");
  // Coverage is checked against the canonical group order.
  const Frame frame = Frame::from_group(family.group, family.n, max_factorial_n);
  (void)grptomo::detail::order_family(family, frame);
  return family;
}

inline json family_to_json(const TomogramFamily& family) {
  json rows = json::array();
  for (const auto& t : family.tomograms) {
    rows.push_back({{"element", element_id(t.element)},
                    {"theta", t.phases},
                    {"p", t.probabilities}});
  }
  return {{"group", std::string(to_string(family.group))},
          {"n", family.n},
          {"tomograms", std::move(rows)}};
}

struct FrameReport {
  Group group = Group::Symmetric;
  int n = 0;
  double lower = 0.0;
  double upper = 0.0;
  double resolution_residual = 0.0;
  double closed_vs_bruteforce = 0.0;
};

/// {"group", "n", "A", "B", "resolution_residual", "closed_vs_bruteforce"}.
inline json frame_report_to_json(const FrameReport& r) {
  return {{"group", std::string(to_string(r.group))},
          {"n", r.n},
          {"A", r.lower},
          {"B", r.upper},
          {"resolution_residual", r.resolution_residual},
          {"closed_vs_bruteforce", r.closed_vs_bruteforce}};
}

}  // namespace grptomo::io
