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

// Command implementations behind the grptomo CLI. Each command takes the
// parsed configuration plus input text and returns the report and an exit
// code: 0 pass, 1 mathematical or validation failure, 2 usage or input error.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grptomo/algebra.hpp"
#include "grptomo/error.hpp"
#include "grptomo/frames.hpp"
#include "grptomo/groupoid.hpp"
#include "grptomo/io.hpp"
#include "grptomo/qubit.hpp"
#include "grptomo/tomography.hpp"

namespace grptomo::cli {

using nlohmann::json;

enum class ReportFormat { Json, Csv };
enum class MubFamily { Dsf, Affine };

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Dense spectra are skipped above this n (the metric matrix is n^2 x n^2).
inline constexpr int kMaxSpectrumN = 31;
inline constexpr double kQubitTolerance = 1e-12;

struct RunConfig {
  std::string command;
  std::optional<int> n;
  Group group = Group::Symmetric;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::string input;
  std::string output;
  std::string compare;
  ReportFormat format = ReportFormat::Json;
  MubFamily family = MubFamily::Dsf;
  int samples = 50;
  int max_factorial_n = kDefaultMaxFactorialN;
};

struct CommandResult {
  int exit_code = kExitPass;
  std::string output;       ///< the report, for --out or stdout
  std::string diagnostics;  ///< human-readable, for stderr
};

inline ReportFormat parse_format(std::string_view s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  throw Error(ErrorCode::InvalidInput, "unknown format '" + std::string(s) + "'");
}

inline MubFamily parse_mub_family(std::string_view s) {
  if (s == "dsf") return MubFamily::Dsf;
  if (s == "affine") return MubFamily::Affine;
  throw Error(ErrorCode::InvalidInput, "unknown family '" + std::string(s) + "'");
}

/// affine needs an odd prime; symmetric needs 2 < n <= cap.
inline void validate_group_n(Group group, int n, int max_factorial_n) {
  if (group == Group::Affine) {
    if (!is_odd_prime(n)) {
      throw Error(ErrorCode::NotOddPrime,
                  "n must be an odd prime, got " + std::to_string(n));
    }
    if (n > kDefaultMaxAffineN) {
      throw Error(ErrorCode::TooLarge, "n must be at most " +
                                           std::to_string(kDefaultMaxAffineN));
    }
    return;
  }
  if (n <= 2) {
    throw Error(ErrorCode::Unsupported, "symmetric group needs n > 2");
  }
  if (n > max_factorial_n) {
    throw Error(ErrorCode::TooLarge,
                "symmetric group n = " + std::to_string(n) + " exceeds cap " +
                    std::to_string(max_factorial_n) +
                    " (set TOMO_MAX_FACTORIAL_N to raise it)");
  }
}

inline int require_n(const RunConfig& config) {
  if (!config.n) throw Error(ErrorCode::InvalidInput, "--n is required");
  return *config.n;
}

namespace detail {
inline std::string csv_cell(const json& v) {
  if (v.is_string()) return io::detail::quote(v.get<std::string>());
  if (v.is_number_float()) return io::format_double(v.get<double>());
  return io::detail::quote(io::dump_json(v, -1));
}

/// Flat key,value lines for the top-level fields of a report.
inline std::string report_to_csv(const json& report) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : report.items()) {
    out += key + "," + csv_cell(value) + "\n";
  }
  return out;
}

inline std::string render(const json& report, ReportFormat format) {
  return format == ReportFormat::Json ? io::dump_json(report) : report_to_csv(report);
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline std::vector<Matrix> random_matrices(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_gaussian_matrix(n, rng));
  return out;
}

inline json witness_json(const StateCheck& check) {
  json out = {{"min_eigenvalue", check.psd.min_eigenvalue},
          {"hermiticity_error", check.psd.hermiticity_error},
          {"trace_error", check.trace_error},
          {"witness", io::vector_to_json(check.psd.witness)},
          {"violations", check.violations}};
  if (!check.psd.hermitian) {
    out["hermiticity_witness"] = io::vector_to_json(check.psd.hermiticity_witness);
    out["hermiticity_witness_value"] = check.psd.hermiticity_witness_value;
  }
  return out;
}

inline std::string violations_text(const StateCheck& check) {
  std::string out;
  for (const auto& v : check.violations) out += v + "\n";
  out += "negative-eigenvalue witness: lambda_min = " +
         io::format_double(check.psd.min_eigenvalue) + "\n";
  if (!check.psd.hermitian) {
    out += "hermiticity witness: Im <v|phi|v> = " +
           io::format_double(check.psd.hermiticity_witness_value) + "\n";
  }
  return out;
}

/// Report entries for the affine characters and Fourier identities.
inline json affine_checks(int n, std::uint64_t seed) {
  long long character_failures = 0;
  for (const auto& g : enumerate_affine(n)) {
    const double tr = permutation_matrix(g).trace().real();
    const double expected = g.mu() != 1 ? 1.0 : (g.ell() == 0 ? n : 0.0);
    if (tr != expected) ++character_failures;
  }
  double fourier = 0.0;
  const auto elements = enumerate_affine(n);
  for (int s = 0; s < 5; ++s) {
    const StateFunction phi = random_state(n, seed + s);
    for (const auto& g : elements) {
      fourier = std::max(fourier, fourier_identity_residual(phi, g));
    }
  }
  return {{"character_failures", character_failures},
          {"fourier_identity_residual", fourier}};
}
}  // namespace detail

/// Frame constants, metric-operator and resolution-of-identity residuals.
inline CommandResult cmd_frame_check(const RunConfig& config) {
  const int n = require_n(config);
  validate_group_n(config.group, n, config.max_factorial_n);
  const Frame frame = Frame::from_group(config.group, n, config.max_factorial_n);
  const DualFrame dual = dual_frame(frame);

  json report;
  report["group"] = std::string(to_string(config.group));
  report["n"] = n;
  report["size"] = frame.size();
  report["A_bound"] = 1.0 / (n - 1);
  report["B_bound"] = static_cast<double>(n) * n;
  if (n <= kMaxSpectrumN) {
    const FrameBounds b = frame_bounds_empirical(frame);
    report["A"] = b.lower;
    report["B"] = b.upper;
    report["A_on_span"] = b.lower_on_span;
    report["span_dimension"] = b.span_dimension;
  }

  const auto psis = detail::random_matrices(n, config.samples, config.seed);
  double closed = 0.0;
  double extended = 0.0;
  int lower_violations = 0;
  int upper_violations = 0;
  for (const auto& psi : psis) {
    const Matrix brute = metric_apply_bruteforce(frame, psi);
    closed = std::max(closed, detail::max_abs(metric_apply_closed(psi) - brute));
    extended = std::max(extended, detail::max_abs(metric_apply_extended(psi) - brute));
    const double energy = frame_energy(frame, psi);
    const double norm2 = hs_norm2(psi);
    if (energy < norm2 / (n - 1) * (1.0 - 1e-12)) ++lower_violations;
    if (energy > norm2 * n * n * (1.0 + 1e-12)) ++upper_violations;
  }
  report["samples"] = config.samples;
  report["closed_vs_bruteforce"] = closed;
  report["extended_vs_bruteforce"] = extended;
  report["lower_bound_violations"] = lower_violations;
  report["upper_bound_violations"] = upper_violations;

  const double fd = resolution_residual(dual, ResolutionOrder::FrameThenDual);
  const double df = resolution_residual(dual, ResolutionOrder::DualThenFrame);
  double on_span = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const Matrix e = AlgebraElement::delta(n, k, j).matrix();
      const Matrix r = reconstruct(dual, analysis(frame, e));
      on_span = std::max(on_span, detail::max_abs(r - project_onto_span(e)));
    }
  }
  report["resolution_residual"] = std::max(fd, df);
  report["resolution_residual_frame_then_dual"] = fd;
  report["resolution_residual_dual_then_frame"] = df;
  report["resolution_residual_on_span"] = on_span;
  if (config.group == Group::Affine) {
    report["affine"] = detail::affine_checks(n, config.seed);
  }

  CommandResult out;
  out.output = detail::render(report, config.format);
  const bool pass = closed <= config.tol && std::max(fd, df) <= config.tol;
  out.exit_code = pass ? kExitPass : kExitFailure;
  if (!pass) {
    out.diagnostics = "frame-check failed: closed_vs_bruteforce = " +
                      io::format_double(closed) + ", resolution_residual = " +
                      io::format_double(std::max(fd, df)) + "\n";
  }
  return out;
}

/// CSV (or JSON) tomogram family of the state in state_text.
inline CommandResult cmd_tomograms(const RunConfig& config, const std::string& state_text) {
  const io::StateReadResult read = io::read_state(state_text, kDefaultPsdTolerance);
  const int n = static_cast<int>(read.phi.rows());
  if (config.n && *config.n != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "--n " + std::to_string(*config.n) + " but state has n = " +
                    std::to_string(n));
  }
  CommandResult out;
  if (!read.check.ok()) {
    out.exit_code = kExitUsage;
    out.output = io::dump_json(detail::witness_json(read.check));
    out.diagnostics = "invalid state:\n" + detail::violations_text(read.check);
    return out;
  }
  validate_group_n(config.group, n, config.max_factorial_n);
  const TomogramFamily family =
      tomogram_family(StateFunction(read.phi), config.group, config.max_factorial_n);
  out.output = config.format == ReportFormat::Csv
                   ? io::write_tomogram_csv(family)
                   : io::dump_json(io::family_to_json(family));
  return out;
}

/// Reconstruction, admissibility verdict and optional comparison.
inline CommandResult cmd_reconstruct(const RunConfig& config, const std::string& csv_text,
                                     const std::optional<std::string>& compare_text) {
  const TomogramFamily family = io::read_tomogram_csv(csv_text, config.max_factorial_n);
  if (config.n && *config.n != family.n) {
    throw Error(ErrorCode::DimensionMismatch,
                "--n " + std::to_string(*config.n) + " but family has n = " +
                    std::to_string(family.n));
  }
  std::optional<io::StateReadResult> reference;
  if (compare_text) {
    reference = io::read_state(*compare_text, kDefaultPsdTolerance);
    if (reference->phi.rows() != family.n) {
      throw Error(ErrorCode::DimensionMismatch, "reference state has wrong n");
    }
  }
  const AdmissibilityVerdict verdict =
      validate_tomogram_family(family, config.tol, config.max_factorial_n);

  json report = io::state_to_json(verdict.phi);
  report["group"] = std::string(to_string(family.group));
  report["admissible"] = verdict.admissible;
  report["check"] = detail::witness_json(verdict.check);

  CommandResult out;
  out.exit_code = verdict.admissible ? kExitPass : kExitFailure;
  if (!verdict.admissible) {
    out.diagnostics = "inadmissible family:\n" + detail::violations_text(verdict.check);
  }
  if (reference) {
    const double dev = detail::max_abs(verdict.phi - reference->phi);
    const double dev_span =
        detail::max_abs(verdict.phi - project_onto_span(reference->phi));
    report["compare"] = {{"max_abs_deviation", dev},
                         {"deviation_from_recoverable", dev_span},
                         {"tolerance", config.tol}};
    if (dev > config.tol) {
      out.exit_code = kExitFailure;
      out.diagnostics += "reconstruction differs from reference by " +
                         io::format_double(dev) + " (recoverable part: " +
                         io::format_double(dev_span) + ")\n";
    }
  }
  out.output = detail::render(report, config.format);
  return out;
}

/// Overlap table and max deviation from 1/n between the n + 1 bases.
inline CommandResult cmd_mub_check(const RunConfig& config) {
  const int n = require_n(config);
  if (!is_odd_prime(n)) {
    throw Error(ErrorCode::NotOddPrime,
                "n must be an odd prime, got " + std::to_string(n));
  }
  json report;
  report["n"] = n;
  report["family"] = config.family == MubFamily::Dsf ? "dsf" : "affine";
  CommandResult out;
  std::vector<EigenBasis> bases;
  if (config.family == MubFamily::Dsf) {
    try {
      bases = mub_family(n);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnbiasednessFailed) throw;
      out.exit_code = kExitFailure;
      out.diagnostics = std::string(e.what()) + "\n";
      out.output = detail::render(report, config.format);
      return out;
    }
    report["weyl_residual"] = weyl_commutation_check(n);
  } else {
    bases = affine_basis_family(n);
  }
  double ortho = 0.0;
  json table = json::array();
  for (std::size_t a = 0; a < bases.size(); ++a) {
    ortho = std::max(ortho, orthonormality_residual(bases[a].vectors));
    json row = json::array();
    for (std::size_t b = 0; b < bases.size(); ++b) {
      row.push_back(a == b ? 0.0 : max_unbiasedness_deviation({bases[a], bases[b]}));
    }
    table.push_back(std::move(row));
  }
  const double dev = max_unbiasedness_deviation(bases);
  report["bases"] = bases.size();
  report["orthonormality_residual"] = ortho;
  report["max_deviation"] = dev;
  report["mutually_unbiased"] = dev <= config.tol;
  report["overlap_table"] = std::move(table);

  bool pass = ortho <= 1e-12;
  if (config.family == MubFamily::Dsf) {
    pass = pass && dev <= config.tol;
  } else {
    // The affine bases are expected to be biased.
    pass = pass && dev > 1e-6;
  }
  out.exit_code = pass ? kExitPass : kExitFailure;
  if (!pass) out.diagnostics = "mub-check failed: max_deviation = " + io::format_double(dev) + "\n";
  out.output = detail::render(report, config.format);
  return out;
}

/// Pauli, Bloch, MUB and SIC checks on two-level systems.
inline CommandResult cmd_qubit_demo(const RunConfig& config) {
  using namespace grptomo::qubit;
  json report;
  std::vector<double> residuals;
  const auto keep = [&](const char* key, double v) {
    report[key] = v;
    residuals.push_back(v);
  };

  const auto set = pauli_tomographic_set();
  double w_ortho = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Complex ip = hs_inner(set.orthonormal[a], set.orthonormal[b]);
      w_ortho = std::max(w_ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
    }
  }
  keep("w_orthonormality_residual", w_ortho);

  std::mt19937_64 rng(config.seed);
  double bloch = 0.0;
  double quorum = 0.0;
  double sic_rt = 0.0;
  double pure_defect = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Matrix rho = random_state(2, config.seed + i).density_matrix();
    bloch = std::max(bloch, detail::max_abs(bloch_reconstruct(bloch_tomogram(rho)).rho - rho));
    Matrix expansion = Matrix::Zero(2, 2);
    for (const auto& w : set.orthonormal) expansion += hs_inner(w, rho) * w;
    quorum = std::max(quorum, detail::max_abs(expansion - rho));
    sic_rt = std::max(sic_rt, detail::max_abs(sic_reconstruct(sic_probabilities(rho)).rho - rho));

    const Matrix g = random_gaussian_matrix(2, rng);
    const Vector v = g.col(0).normalized();
    pure_defect = std::max(pure_defect, purity_defect(bloch_tomogram(v * v.adjoint())));
  }
  keep("bloch_round_trip_error", bloch);
  keep("quorum_residual", quorum);
  keep("purity_defect_pure", pure_defect);
  const double mixed_defect = purity_defect(bloch_tomogram(0.5 * identity()));
  report["purity_defect_mixed"] = mixed_defect;
  residuals.push_back(std::abs(mixed_defect - 0.25));

  const auto mub = qubit_mub();
  json mub_table = json::array();
  double mub_dev = 0.0;
  for (int a = 0; a < 3; ++a) {
    json row = json::array();
    for (int b = 0; b < 3; ++b) {
      const Matrix overlap = (mub[a].adjoint() * mub[b]).cwiseAbs2();
      row.push_back(io::matrix_to_json(overlap.real().cast<Complex>()));
      if (a != b) mub_dev = std::max(mub_dev, (overlap.array() - 0.5).abs().maxCoeff());
    }
    mub_table.push_back(std::move(row));
  }
  report["mub_overlaps"] = std::move(mub_table);
  keep("mub_max_deviation", mub_dev);

  const auto tet = sic_tetrahedron();
  json gram = json::array();
  double gram_res = 0.0;
  double proj_res = 0.0;
  Matrix completeness = -identity();
  for (int j = 0; j < 4; ++j) {
    completeness += tet.elements[j];
    json row = json::array();
    for (int k = 0; k < 4; ++k) {
      const double d = tet.directions[j].dot(tet.directions[k]);
      row.push_back(d);
      gram_res = std::max(gram_res, std::abs(d - (j == k ? 1.0 : -1.0 / 3.0)));
      if (j != k) {
        const double tr = (4.0 * tet.elements[j] * tet.elements[k]).trace().real();
        proj_res = std::max(proj_res, std::abs(tr - 1.0 / 3.0));
      }
    }
    gram.push_back(std::move(row));
  }
  report["sic_gram"] = std::move(gram);
  keep("sic_gram_residual", gram_res);
  keep("sic_projector_overlap_residual", proj_res);
  keep("sic_completeness_residual", detail::max_abs(completeness));
  keep("sic_round_trip_error", sic_rt);

  CommandResult out;
  const double worst = *std::max_element(residuals.begin(), residuals.end());
  out.exit_code = worst <= kQubitTolerance ? kExitPass : kExitFailure;
  if (out.exit_code) out.diagnostics = "qubit-demo residual " + io::format_double(worst) + "\n";
  out.output = detail::render(report, config.format);
  return out;
}

/// Seeded random state, Phi = n G^dagger G / Tr(G^dagger G).
inline CommandResult cmd_gen_state(const RunConfig& config) {
  const int n = require_n(config);
  if (n < 1) throw Error(ErrorCode::InvalidInput, "n must be positive");
  json report = io::state_to_json(random_state(n, config.seed).matrix());
  report["seed"] = config.seed;
  return {kExitPass, io::dump_json(report), {}};
}

/// Math failures exit 1; everything else the library throws is bad input.
inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllConditioned:
    case ErrorCode::UnbiasednessFailed:
      return kExitFailure;
    default:
      return kExitUsage;
  }
}

}  // namespace grptomo::cli
