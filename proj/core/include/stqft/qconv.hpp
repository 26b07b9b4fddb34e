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
#include <optional>
#include <span>

#include "stqft/block_encoding.hpp"
#include "stqft/circuit.hpp"
#include "stqft/framing.hpp"
#include "stqft/linalg.hpp"
#include "stqft/statevector.hpp"

namespace stqft {

struct FilterSpec {
  RealVector taps;             // time domain, length f_l
  std::size_t padded_length = 0;
  RealVector normalized_taps;  // zero-padded to padded_length, unit norm
  ComplexVector fourier_coeffs;  // QFT of normalized_taps
  double filter_norm = 0.0;

  std::size_t filter_length() const { return taps.size(); }
  unsigned num_qubits() const { return log2_exact(padded_length); }
};

/// Pads the taps to padded_length(w_l, f_l), shared with the frames.
FilterSpec make_filter(std::span<const double> taps, std::size_t window_length);
/// Pads the taps to exactly `length` (power of two >= 2, >= f_l).
FilterSpec make_filter_padded(std::span<const double> taps, std::size_t length);

enum class ReadoutMode { Exact, Sampled };

/// How the final register is read. Exact returns the real parts of the
/// amplitudes; Sampled estimates |amplitude| as sqrt(count / shots), which is
/// only meaningful for non-negative outputs.
struct ReadoutOptions {
  ReadoutMode mode = ReadoutMode::Exact;
  std::uint64_t shots = 1'000'000;
  std::uint64_t seed = 0;
};

RealVector read_out(const QuantumState& state, const ReadoutOptions& readout);

struct ConvolutionResult {
  RealVector output;  // length padded_length, signal units
  ScaleLedger ledger;
  RealVector readout;  // raw readout before rescaling
};

/// Filter in its own register: QFT both, transversal CNOT (frame register
/// controls, filter register targets), postselect filter register on |0..0>,
/// IQFT the frame register. Ledger holds P = sum |A_k B_k|^2.
ConvolutionResult conv_register_method(const EncodedFrame& frame, const FilterSpec& filter,
                                       const ReadoutOptions& readout = {});

/// Filter as diag(fourier_coeffs) block-encoded on one ancilla.
ConvolutionResult conv_block_method(const EncodedFrame& frame, const FilterSpec& filter,
                                    const ReadoutOptions& readout = {});
ConvolutionResult conv_block_method(const EncodedFrame& frame, const FilterSpec& filter,
                                    const BlockEncoding& block,
                                    const ReadoutOptions& readout = {});
/// Same, but the block unitary is applied gate by gate from a decomposition.
ConvolutionResult conv_block_method(const EncodedFrame& frame, const FilterSpec& filter,
                                    const BlockEncoding& block, const GateList& circuit,
                                    const ReadoutOptions& readout = {});

BlockEncoding build_diagonal_block_encoding(const FilterSpec& filter);

enum class ConvMethod { Register, Block };

/// A filter prepared once for many frames. The block method builds its
/// encoding (and, when requested, its gate decomposition) up front.
class FrameConvolver {
 public:
  FrameConvolver(FilterSpec filter, ConvMethod method,
                 std::optional<double> fable_threshold = std::nullopt);
  /// Uses a previously built (e.g. deserialized) encoding.
  FrameConvolver(FilterSpec filter, BlockEncoding block,
                 std::optional<double> fable_threshold = std::nullopt);

  ConvolutionResult convolve(const EncodedFrame& frame, const ReadoutOptions& readout = {}) const;

  const FilterSpec& filter() const noexcept { return filter_; }
  ConvMethod method() const noexcept { return method_; }
  const std::optional<BlockEncoding>& block() const noexcept { return block_; }
  const std::optional<FableCircuit>& fable() const noexcept { return fable_; }

 private:
  FilterSpec filter_;
  ConvMethod method_;
  std::optional<BlockEncoding> block_;
  std::optional<FableCircuit> fable_;
};

}  // namespace stqft
