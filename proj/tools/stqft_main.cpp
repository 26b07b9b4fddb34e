// Copyright 2026 The STQFT Authors
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

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "stqft/block_encoding.hpp"
#include "stqft/error.hpp"
#include "stqft/pipeline.hpp"
#include "stqft/qconv.hpp"
#include "stqft/signal_io.hpp"

namespace {

struct ExportOptions {
  std::string filter_path;
  std::size_t window_length = 16;
  std::string block_path;
  std::string gates_path;
  double fable_threshold = 0.0;
};

int run_export(const ExportOptions& opts) {
  using namespace stqft;
  try {
    const auto taps = io::read_filter(opts.filter_path);
    const auto filter = make_filter(taps, opts.window_length);
    const auto block = build_diagonal_block_encoding(filter);
    save_block_encoding(opts.block_path, block);
    if (!opts.gates_path.empty()) {
      const auto circuit = fable_decompose_diagonal(block, opts.fable_threshold);
      std::ofstream out(opts.gates_path);
      if (!out) throw Error(ErrorCode::FileError, "cannot open " + opts.gates_path);
      out << "# qubits " << circuit.num_qubits << ", rotations kept " << circuit.kept_rotations
          << ", dropped " << circuit.dropped_rotations << ", max error " << circuit.max_error
          << '\n';
      write_gate_list(out, circuit.gates);
      std::cerr << "gate list: " << circuit.gates.size() << " gates, max error "
                << circuit.max_error << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace

int main(int argc, char** argv) {
  using stqft::ConvMethod;
  using stqft::ReadoutMode;
  using stqft::Reconstruction;

  CLI::App app{"Short-time quantum Fourier transform filtering on a state-vector simulator"};
  app.require_subcommand(0, 1);

  stqft::PipelineConfig config;
  std::size_t hop = 0;
  double dc_offset = 0.0;

  const std::map<std::string, ConvMethod> methods{{"register", ConvMethod::Register},
                                                  {"block", ConvMethod::Block}};
  const std::map<std::string, Reconstruction> recons{
      {"ola", Reconstruction::Ola}, {"ols", Reconstruction::Ols}, {"none", Reconstruction::None}};
  const std::map<std::string, ReadoutMode> readouts{{"exact", ReadoutMode::Exact},
                                                    {"sampled", ReadoutMode::Sampled}};

  app.add_option("--input", config.input_path, "Input signal (.csv or 16-bit mono .wav)");
  app.add_option("--filter", config.filter_path, "Filter taps (.csv)");
  app.add_option("--output", config.output_path, "Output signal (.csv or .wav)");
  app.add_option("--report", config.report_path, "Line-delimited JSON run report");
  app.add_option("--window", config.window_length, "Window length w_l")->capture_default_str();
  auto* hop_opt = app.add_option("--hop", hop, "Hop size (default: window length)");
  app.add_option("--method", config.method, "Quantum convolution method")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case))
      ->default_str("block");
  app.add_option("--recon", config.reconstruction, "Reconstruction scheme")
      ->transform(CLI::CheckedTransformer(recons, CLI::ignore_case))
      ->default_str("ola");
  app.add_option("--readout", config.readout, "Register readout mode")
      ->transform(CLI::CheckedTransformer(readouts, CLI::ignore_case))
      ->default_str("exact");
  app.add_option("--shots", config.shots, "Shots per readout in sampled mode")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "RNG seed for sampled mode")->capture_default_str();
  auto* dc_opt = app.add_option("--dc-offset", dc_offset, "DC offset added before encoding");
  app.add_flag("--fable", config.fable, "Apply the block encoding as a rotation circuit");
  app.add_option("--fable-threshold", config.fable_threshold,
                 "Drop multiplexed rotations smaller than this (radians)")
      ->capture_default_str();
  app.add_flag("--verify", config.verify, "Compare against the classical convolution oracle");
  app.add_option("--threads", config.threads, "Worker threads (0: all cores)");

  ExportOptions export_opts;
  auto* export_cmd =
      app.add_subcommand("export-block", "Write a filter's block encoding and gate list");
  export_cmd->add_option("--filter", export_opts.filter_path, "Filter taps (.csv)")->required();
  export_cmd->add_option("--window", export_opts.window_length, "Window length w_l")
      ->capture_default_str();
  export_cmd->add_option("--out", export_opts.block_path, "Binary block encoding")->required();
  export_cmd->add_option("--gates", export_opts.gates_path, "Text gate list");
  export_cmd->add_option("--fable-threshold", export_opts.fable_threshold,
                         "Rotation compression threshold")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : stqft::kExitConfig;
  }

  if (export_cmd->parsed()) return run_export(export_opts);

  if (*hop_opt) config.hop = hop;
  if (*dc_opt) config.dc_offset = dc_offset;
  return stqft::run_pipeline(config, std::cerr);
}
