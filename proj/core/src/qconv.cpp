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

#include "stqft/qconv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stqft/error.hpp"

namespace stqft {

namespace {

void require_same_length(const EncodedFrame& frame, const FilterSpec& filter) {
  if (frame.padded_length() != filter.padded_length)
    throw Error(ErrorCode::DimensionMismatch,
                "frame " + std::to_string(frame.index) + " padded to " +
                    std::to_string(frame.padded_length()) + " but filter padded to " +
                    std::to_string(filter.padded_length));
}

ConvolutionResult finish(const QuantumState& output_register, ScaleLedger ledger,
                         const ReadoutOptions& readout) {
  ConvolutionResult result;
  result.readout = read_out(output_register, readout);
  result.ledger = std::move(ledger);
  const double factor = result.ledger.rescale_factor();
  result.output.resize(result.readout.size());
  std::transform(result.readout.begin(), result.readout.end(), result.output.begin(),
                 [factor](double r) { return r * factor; });
  return result;
}

ScaleLedger base_ledger(const EncodedFrame& frame, const FilterSpec& filter) {
  ScaleLedger ledger = frame.ledger;
  ledger.filter_norm = filter.filter_norm;
  ledger.qft_factor = std::sqrt(static_cast<double>(filter.padded_length));
  return ledger;
}

// QFT -> block (dense or gate list) -> postselect ancilla -> IQFT.
template <typename ApplyBlock>
ConvolutionResult run_block(const EncodedFrame& frame, const FilterSpec& filter,
                            const BlockEncoding& block, const ReadoutOptions& readout,
                            ApplyBlock&& apply_block) {
  require_same_length(frame, filter);
  if (block.num_system_qubits != frame.num_qubits())
    throw Error(ErrorCode::DimensionMismatch, "block encoding does not match frame register");
  const unsigned n = frame.num_qubits();
  const auto system = qubit_range(0, n);
  const auto ancillas = qubit_range(n, block.ancilla_count);

  auto state = apply_qft(frame.state, system);
  state = QuantumState::tensor(state, QuantumState::basis(block.ancilla_count, 0));
  state = apply_block(std::move(state));
  auto selected = postselect(state, ancillas, 0);
  auto out = apply_iqft(std::move(selected.state), system);

  ScaleLedger ledger = base_ledger(frame, filter);
  ledger.success_probs.push_back(selected.probability);
  ledger.subnormalization = block.subnormalization;
  return finish(out, std::move(ledger), readout);
}

}  // namespace

FilterSpec make_filter_padded(std::span<const double> taps, std::size_t length) {
  if (taps.empty()) throw Error(ErrorCode::AllZeroFilter, "filter has no taps");
  if (length < 2 || !is_power_of_two(length) || taps.size() > length)
    throw Error(ErrorCode::DimensionMismatch,
                "cannot pad " + std::to_string(taps.size()) + " taps to length " +
                    std::to_string(length));
  FilterSpec spec;
  spec.taps.assign(taps.begin(), taps.end());
  spec.padded_length = length;
  RealVector padded(length, 0.0);
  std::copy(taps.begin(), taps.end(), padded.begin());
  spec.filter_norm = norm(padded);
  if (spec.filter_norm == 0.0) throw Error(ErrorCode::AllZeroFilter, "filter taps are all zero");
  spec.normalized_taps = padded;
  for (auto& t : spec.normalized_taps) t /= spec.filter_norm;

  const auto encoded = QuantumState::normalized(spec.normalized_taps);
  const auto transformed = apply_qft(encoded, qubit_range(0, encoded.num_qubits()));
  spec.fourier_coeffs.assign(transformed.amplitudes().begin(), transformed.amplitudes().end());
  return spec;
}

FilterSpec make_filter(std::span<const double> taps, std::size_t window_length) {
  if (taps.empty()) throw Error(ErrorCode::AllZeroFilter, "filter has no taps");
  return make_filter_padded(taps, padded_length(window_length, taps.size()));
}

RealVector read_out(const QuantumState& state, const ReadoutOptions& readout) {
  if (readout.mode == ReadoutMode::Exact) return state.real_amplitudes();
  const auto counts = sample_readout(state, readout.shots, readout.seed);
  RealVector out(counts.size());
  const auto shots = static_cast<double>(readout.shots);
  std::transform(counts.begin(), counts.end(), out.begin(),
                 [shots](std::uint64_t c) { return std::sqrt(static_cast<double>(c) / shots); });
  return out;
}

ConvolutionResult conv_register_method(const EncodedFrame& frame, const FilterSpec& filter,
                                       const ReadoutOptions& readout) {
  require_same_length(frame, filter);
  const unsigned n = frame.num_qubits();
  const auto window_reg = qubit_range(0, n);
  const auto filter_reg = qubit_range(n, n);

  auto state = QuantumState::tensor(frame.state, QuantumState::normalized(filter.normalized_taps));
  state = apply_qft(std::move(state), window_reg);
  state = apply_qft(std::move(state), filter_reg);
  state = apply_transversal_cnot(std::move(state), window_reg, filter_reg);
  auto selected = postselect(state, filter_reg, 0);
  auto out = apply_iqft(std::move(selected.state), window_reg);

  ScaleLedger ledger = base_ledger(frame, filter);
  ledger.success_probs.push_back(selected.probability);
  return finish(out, std::move(ledger), readout);
}

BlockEncoding build_diagonal_block_encoding(const FilterSpec& filter) {
  return build_diagonal_block_encoding(filter.fourier_coeffs);
}

ConvolutionResult conv_block_method(const EncodedFrame& frame, const FilterSpec& filter,
                                    const ReadoutOptions& readout) {
  return conv_block_method(frame, filter, build_diagonal_block_encoding(filter), readout);
}

ConvolutionResult conv_block_method(const EncodedFrame& frame, const FilterSpec& filter,
                                    const BlockEncoding& block, const ReadoutOptions& readout) {
  const auto all = qubit_range(0, block.total_qubits());
  return run_block(frame, filter, block, readout, [&](QuantumState s) {
    return apply_unitary(std::move(s), block.unitary, all);
  });
}

ConvolutionResult conv_block_method(const EncodedFrame& frame, const FilterSpec& filter,
                                    const BlockEncoding& block, const GateList& circuit,
                                    const ReadoutOptions& readout) {
  return run_block(frame, filter, block, readout,
                   [&](QuantumState s) { return apply_gates(std::move(s), circuit); });
}

FrameConvolver::FrameConvolver(FilterSpec filter, ConvMethod method,
                               std::optional<double> fable_threshold)
    : filter_(std::move(filter)), method_(method) {
  if (method_ == ConvMethod::Block) {
    block_ = build_diagonal_block_encoding(filter_);
    if (fable_threshold) fable_ = fable_decompose_diagonal(*block_, *fable_threshold);
  } else if (fable_threshold) {
    throw Error(ErrorCode::ConfigError, "gate decomposition only applies to the block method");
  }
}

FrameConvolver::FrameConvolver(FilterSpec filter, BlockEncoding block,
                               std::optional<double> fable_threshold)
    : filter_(std::move(filter)), method_(ConvMethod::Block), block_(std::move(block)) {
  if (block_->num_system_qubits != filter_.num_qubits())
    throw Error(ErrorCode::DimensionMismatch, "block encoding does not match filter length");
  if (fable_threshold) fable_ = fable_decompose_diagonal(*block_, *fable_threshold);
}

ConvolutionResult FrameConvolver::convolve(const EncodedFrame& frame,
                                           const ReadoutOptions& readout) const {
  if (method_ == ConvMethod::Register) return conv_register_method(frame, filter_, readout);
  if (fable_) return conv_block_method(frame, filter_, *block_, fable_->gates, readout);
  return conv_block_method(frame, filter_, *block_, readout);
}

}  // namespace stqft
