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

#include "stqft/framing.hpp"
#include "stqft/linalg.hpp"
#include "stqft/qconv.hpp"

namespace stqft {

/// 2r x 2r routing matrix for l overlapping samples. Applied to a vector
/// whose last r entries hold the later frame, it moves that frame to
/// positions r-l .. 2r-l-1 and parks the displaced zeros at the end.
struct PermutationSpec {
  std::size_t r = 0;
  std::size_t l = 0;
  CMatrix matrix;
  /// source[row] = column holding the 1 in that row.
  std::vector<std::size_t> source;
};

PermutationSpec build_uperm(std::size_t r, std::size_t l);

struct QolaResult {
  RealVector sum_vector;         // length 2r
  double success_probability = 0.0;  // ancilla |0>: |SUM|^2 / (2 M^2)
  double pair_norm = 0.0;        // M = |[a; b]|
  RealVector difference_vector;  // length 2r, ancilla |1> branch, read exactly
  double difference_probability = 0.0;
};

/// Overlap-adds two equal-length frames through the QOLA circuit: joint
/// encode, CNOT onto the ancilla, ancilla-controlled U_PERM, Hadamard,
/// postselect the ancilla. Frames whose length is not a power of two are
/// zero-padded and the overlap adjusted so the shift stays r - l.
QolaResult qola_pair(std::span<const double> frame_a, std::span<const double> frame_b,
                     std::size_t overlap, const ReadoutOptions& readout = {});

struct QolaStreamResult {
  RealVector samples;
  std::vector<QolaResult> pairs;  // one per quantum pair call, in order
  std::size_t classical_merges = 0;
  /// pair_frame[i] = ordinal of the later frame merged by pairs[i].
  std::vector<std::size_t> pair_frame;
};

/// Left-to-right overlap-add of equal-length frames placed hop apart. The
/// running tail of the output is merged with each next frame by qola_pair;
/// all-zero incoming frames are placed classically. Requires
/// r - hop <= hop (OverlapTooLarge) and hop <= r (InvalidOverlap).
QolaStreamResult qola_stream(const std::vector<RealVector>& frames, std::size_t hop,
                             const ReadoutOptions& readout = {});

struct OverlapSaveBlock {
  std::size_t index = 0;
  bool is_zero = false;
  unsigned num_qubits = 0;
  ScaleLedger ledger;
};

struct OverlapSaveResult {
  RealVector samples;  // |signal| + f_l - 1
  std::vector<OverlapSaveBlock> blocks;
  std::size_t block_length = 0;
  std::size_t step = 0;
};

/// Block length used by overlap-save for a window length: smallest power of
/// two >= w_l, at least 2.
std::size_t overlap_save_block_length(std::size_t window_length);

/// Overlap-save through quantum circular convolution. Windows of B samples
/// step by B - f_l + 1 over the signal prefixed with f_l - 1 zeros; each is
/// convolved without linear-expansion padding and its first f_l - 1 outputs
/// dropped. Throws FilterLongerThanBlock when f_l >= B.
OverlapSaveResult overlap_save_stream(std::span<const double> signal,
                                      std::span<const double> taps, std::size_t window_length,
                                      ConvMethod method, const ReadoutOptions& readout = {},
                                      std::optional<double> fable_threshold = std::nullopt);

}  // namespace stqft
