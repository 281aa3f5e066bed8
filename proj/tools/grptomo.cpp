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

// grptomo: frame checks, tomograms and reconstruction on the pair groupoid.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grptomo/grptomo.hpp"

namespace {

using grptomo::Error;
using grptomo::ErrorCode;
namespace cli = grptomo::cli;

std::string read_file(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream s;
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

int max_factorial_from_env() {
  const char* v = std::getenv("TOMO_MAX_FACTORIAL_N");
  if (!v || !*v) return grptomo::kDefaultMaxFactorialN;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 3 || n > 10) {
    throw Error(ErrorCode::InvalidInput,
                "TOMO_MAX_FACTORIAL_N must be an integer in [3, 10]");
  }
  return static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tomography on the pair groupoid"};
  app.require_subcommand(1);

  cli::RunConfig config;
  int n = 0;
  std::string group = "symmetric";
  std::string format;
  std::string family = "dsf";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "RNG seed");
    sub->add_option("--tol", config.tol, "residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", config.output, "output file (default stdout)");
    sub->add_option("--format", format, "json or csv");
  };

  auto* frame = app.add_subcommand("frame-check", "frame bounds and metric residuals");
  frame->add_option("--n", n, "size of Omega")->required();
  frame->add_option("--group", group, "symmetric or affine");
  frame->add_option("--samples", config.samples, "random test vectors")
      ->check(CLI::PositiveNumber);
  add_common(frame);

  auto* tomo = app.add_subcommand("tomograms", "tomogram family of a state");
  tomo->add_option("--in", config.input, "state JSON")->required();
  tomo->add_option("--n", n, "expected size of Omega");
  tomo->add_option("--group", group, "symmetric or affine");
  add_common(tomo);

  auto* recon = app.add_subcommand("reconstruct", "state from a tomogram family");
  recon->add_option("--in", config.input, "tomogram CSV")->required();
  recon->add_option("--n", n, "expected size of Omega");
  recon->add_option("--group", group, "accepted for symmetry; read from the file");
  recon->add_option("--compare", config.compare, "reference state JSON");
  add_common(recon);

  auto* mub = app.add_subcommand("mub-check", "mutual unbiasedness of n + 1 bases");
  mub->add_option("--n", n, "odd prime")->required();
  mub->add_option("--family", family, "dsf or affine");
  add_common(mub);

  auto* qubit = app.add_subcommand("qubit-demo", "Pauli, Bloch and SIC checks");
  add_common(qubit);

  auto* gen = app.add_subcommand("gen-state", "seeded random state");
  gen->add_option("--n", n, "size of Omega")->required();
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  try {
    config.max_factorial_n = max_factorial_from_env();
    config.group = grptomo::parse_group(group);
    config.family = cli::parse_mub_family(family);
    if (n != 0) config.n = n;

    config.command = app.get_subcommands().front()->get_name();
    if (*tomo) config.format = cli::ReportFormat::Csv;
    if (!format.empty()) config.format = cli::parse_format(format);

    cli::CommandResult result;
    if (*frame) {
      result = cli::cmd_frame_check(config);
    } else if (*tomo) {
      result = cli::cmd_tomograms(config, read_file(config.input));
    } else if (*recon) {
      std::optional<std::string> compare;
      if (!config.compare.empty()) compare = read_file(config.compare);
      result = cli::cmd_reconstruct(config, read_file(config.input), compare);
    } else if (*mub) {
      result = cli::cmd_mub_check(config);
    } else if (*qubit) {
      result = cli::cmd_qubit_demo(config);
    } else {
      result = cli::cmd_gen_state(config);
    }
    write_output(config.output, result.output);
    std::cerr << result.diagnostics;
    return result.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
}
