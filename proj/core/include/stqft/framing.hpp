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

#include <cstddef>
#include <span>
#include <vector>

#include "stqft/linalg.hpp"
#include "stqft/statevector.hpp"

namespace stqft {

/// One rectangular window of the input signal.
struct Frame {
  RealVector samples;  // length window_length; a short final frame is zero-padded
  std::size_t index = 0;
  std::size_t window_length = 0;
  bool is_zero = false;  // every sample exactly 0
};

struct FrameStream {
  std::vector<Frame> frames;
  std::size_t window_length = 0;
  std::size_t hop = 0;
  std::size_t signal_length = 0;

  std::size_t zero_frame_count() const;
};

/// Multiplicative factors that map a quantum readout back to signal units.
struct ScaleLedger {
  double frame_norm = 0.0;
  double filter_norm = 0.0;
  double qft_factor = 1.0;  // 2^{n/2}
  std::vector<double> success_probs;
  double subnormalization = 1.0;
  double dc_offset = 0.0;  // removed separately via dc_correction

  /// frame_norm * filter_norm * qft_factor * prod sqrt(p) * subnormalization.
  double rescale_factor() const;
};

struct EncodedFrame {
  QuantumState state;
  ScaleLedger ledger;
  std::size_t index = 0;
  std::size_t window_length = 0;

  std::size_t padded_length() const { return state.dim(); }
  unsigned num_qubits() const { return state.num_qubits(); }
};

/// Smallest power of two >= w_l + f_l - 1, and never below 2 (one qubit).
std::size_t padded_length(std::size_t window_length, std::size_t filter_length);

/// Rectangular windows at offsets k * hop, k * hop < |signal|.
FrameStream frame_signal(std::span<const double> signal, std::size_t window_length,
                         std::size_t hop);

/// Pads to padded_length(w_l, f_l) and amplitude-encodes. Throws
/// AllZeroFrame for a frame that has to take the classical bypass.
EncodedFrame pad_and_encode(const Frame& frame, std::size_t filter_length);

/// Encodes `samples` zero-padded to exactly `length` (a power of two >= 2).
EncodedFrame encode_padded(std::span<const double> samples, std::size_t length,
                           std::size_t index = 0);

/// Amplitudes times frame_norm: the padded samples the state encodes.
RealVector decode_frame(const EncodedFrame& frame);

/// signal + c. Requires c >= max(0, -min(signal)).
RealVector apply_dc_offset(std::span<const double> signal, double offset);

/// Linear convolution of the constant run offset * 1_{run_length} with the
/// filter; subtracting it undoes a DC offset by linearity.
RealVector dc_correction(double offset, std::size_t run_length, std::span<const double> filter);

}  // namespace stqft
