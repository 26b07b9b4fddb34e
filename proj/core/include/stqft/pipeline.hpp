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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stqft/error.hpp"
#include "stqft/framing.hpp"
#include "stqft/qconv.hpp"

namespace stqft {

enum class Reconstruction { Ola, Ols, None };

struct PipelineConfig {
  std::string input_path;
  std::string filter_path;
  std::string output_path;
  std::string report_path;
  std::size_t window_length = 16;
  std::optional<std::size_t> hop;  // defaults to window_length
  ConvMethod method = ConvMethod::Block;
  Reconstruction reconstruction = Reconstruction::Ola;
  ReadoutMode readout = ReadoutMode::Exact;
  std::uint64_t shots = 1'000'000;
  std::uint64_t seed = 0;
  std::optional<double> dc_offset;
  bool fable = false;
  double fable_threshold = 0.0;
  bool verify = false;
  unsigned threads = 0;  // 0: hardware concurrency

  std::size_t effective_hop() const { return hop.value_or(window_length); }
};

/// Throws ConfigError naming the offending option.
void validate(const PipelineConfig& config);

struct FrameRecord {
  std::size_t index = 0;
  bool is_zero = false;
  unsigned num_qubits = 0;
  std::optional<double> conv_probability;
  std::optional<double> qola_probability;
  std::optional<double> qola_difference_probability;
  ScaleLedger ledger;
};

struct RunReport {
  std::vector<FrameRecord> frames;
  std::size_t skipped_zero_frames = 0;
  std::size_t qola_pairs = 0;
  std::optional<double> max_abs_error;
  std::optional<double> fable_max_error;
  std::size_t output_length = 0;

  std::size_t total_frames() const { return frames.size(); }
};

/// One JSON object per line: a "frame" record per frame in frame order,
/// then one "aggregate" record.
void write_report(std::ostream& out, const RunReport& report, const PipelineConfig& config);

struct PipelineResult {
  RealVector output;
  RunReport report;
};

/// In-memory pipeline; `config` paths are ignored. Errors raised while
/// processing a frame carry its index in the message.
PipelineResult run_pipeline(std::span<const double> signal, std::span<const double> taps,
                            const PipelineConfig& config);

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitIo = 2, kExitPipeline = 3 };

/// Maps an error code to the CLI exit status.
int exit_code_for(ErrorCode code) noexcept;

/// Reads inputs, runs, writes output and report. Diagnostics go to `err`.
int run_pipeline(const PipelineConfig& config, std::ostream& err);

}  // namespace stqft
