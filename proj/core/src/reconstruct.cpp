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

#include "stqft/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stqft/error.hpp"

namespace stqft {

namespace {

bool all_zero(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

RealVector scaled(const RealVector& readout, double factor) {
  RealVector out(readout.size());
  std::transform(readout.begin(), readout.end(), out.begin(),
                 [factor](double r) { return r * factor; });
  return out;
}

}  // namespace

PermutationSpec build_uperm(std::size_t r, std::size_t l) {
  if (r == 0 || l >= r)
    throw Error(ErrorCode::InvalidOverlap,
                "need 0 <= l < r (r=" + std::to_string(r) + ", l=" + std::to_string(l) + ")");
  PermutationSpec spec{r, l, CMatrix(2 * r), std::vector<std::size_t>(2 * r)};
  // Row blocks (r-l, r, l): [I 0 0; 0 0 I_r; 0 I_l 0].
  for (std::size_t i = 0; i < r - l; ++i) spec.source[i] = i;
  for (std::size_t i = 0; i < r; ++i) spec.source[r - l + i] = r + i;
  for (std::size_t i = 0; i < l; ++i) spec.source[2 * r - l + i] = r - l + i;
  for (std::size_t row = 0; row < 2 * r; ++row) spec.matrix(row, spec.source[row]) = 1.0;
  return spec;
}

QolaResult qola_pair(std::span<const double> frame_a, std::span<const double> frame_b,
                     std::size_t overlap, const ReadoutOptions& readout) {
  if (frame_a.size() != frame_b.size() || frame_a.empty())
    throw Error(ErrorCode::DimensionMismatch, "QOLA frames must be nonempty and equal length");
  const std::size_t r_in = frame_a.size();
  if (overlap >= r_in)
    throw Error(ErrorCode::InvalidOverlap, "overlap must be shorter than the frame");
  const std::size_t r = next_power_of_two(r_in);
  const std::size_t shift = r_in - overlap;
  const std::size_t l = r - shift;

  RealVector joint(2 * r, 0.0);
  std::copy(frame_a.begin(), frame_a.end(), joint.begin());
  std::copy(frame_b.begin(), frame_b.end(), joint.begin() + static_cast<std::ptrdiff_t>(r));
  const double pair_norm = norm(joint);
  if (pair_norm == 0.0)
    throw Error(ErrorCode::AllZeroPair, "both frames are all zero; place zeros classically");

  const unsigned data_qubits = log2_exact(2 * r);
  const Qubit selector = data_qubits - 1;  // |0> -> frame a, |1> -> frame b
  const Qubit ancilla = data_qubits;
  const Qubit ancilla_list[] = {ancilla};

  auto state = QuantumState::tensor(QuantumState::normalized(joint), QuantumState::basis(1, 0));
  state = apply_cnot(std::move(state), selector, ancilla);
  state = apply_controlled_unitary(std::move(state), ancilla, build_uperm(r, l).matrix);
  state = apply_hadamard(std::move(state), ancilla);

  QolaResult result;
  result.pair_norm = pair_norm;
  result.difference_probability = outcome_probability(state, ancilla_list, 1);
  if (result.difference_probability > 0.0) {
    const auto diff = postselect(state, ancilla_list, 1);
    result.difference_vector = scaled(diff.state.real_amplitudes(),
                                      std::sqrt(2.0 * diff.probability) * pair_norm);
  } else {
    result.difference_vector.assign(2 * r, 0.0);
  }
  // Throws ZeroProbabilityOutcome when the frames cancel exactly.
  const auto sum = postselect(state, ancilla_list, 0);
  result.success_probability = sum.probability;
  result.sum_vector =
      scaled(read_out(sum.state, readout), std::sqrt(2.0 * sum.probability) * pair_norm);
  return result;
}

QolaStreamResult qola_stream(const std::vector<RealVector>& frames, std::size_t hop,
                             const ReadoutOptions& readout) {
  QolaStreamResult result;
  if (frames.empty()) return result;
  const std::size_t r = frames.front().size();
  for (const auto& f : frames)
    if (f.size() != r) throw Error(ErrorCode::DimensionMismatch, "stream frames differ in length");
  if (hop == 0 || hop > r)
    throw Error(ErrorCode::InvalidOverlap, "hop must lie in [1, r] (r=" + std::to_string(r) +
                                               ", hop=" + std::to_string(hop) + ")");
  const std::size_t l = r - hop;
  if (l > hop)
    throw Error(ErrorCode::OverlapTooLarge,
                "overlap " + std::to_string(l) + " exceeds hop " + std::to_string(hop) +
                    "; a tail would reach past the next frame");

  RealVector tail = frames.front();
  result.samples.reserve((frames.size() - 1) * hop + r);
  for (std::size_t k = 1; k < frames.size(); ++k) {
    const auto& next = frames[k];
    // merged covers [k-1 start, k-1 start + 2r - l)
    RealVector merged(2 * r, 0.0);
    if (all_zero(next)) {
      std::copy(tail.begin(), tail.end(), merged.begin());
      ++result.classical_merges;
    } else {
      ReadoutOptions pair_readout = readout;
      pair_readout.seed = readout.seed + k;
      try {
        auto pair = qola_pair(tail, next, l, pair_readout);
        merged = pair.sum_vector;
        result.pairs.push_back(std::move(pair));
        result.pair_frame.push_back(k);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroProbabilityOutcome) throw;
        ++result.classical_merges;  // exact cancellation: SUM is zero
      }
    }
    result.samples.insert(result.samples.end(), merged.begin(),
                          merged.begin() + static_cast<std::ptrdiff_t>(hop));
    tail.assign(merged.begin() + static_cast<std::ptrdiff_t>(hop),
                merged.begin() + static_cast<std::ptrdiff_t>(hop + r));
  }
  result.samples.insert(result.samples.end(), tail.begin(), tail.end());
  return result;
}

std::size_t overlap_save_block_length(std::size_t window_length) {
  return std::max<std::size_t>(2, next_power_of_two(window_length));
}

OverlapSaveResult overlap_save_stream(std::span<const double> signal,
                                      std::span<const double> taps, std::size_t window_length,
                                      ConvMethod method, const ReadoutOptions& readout,
                                      std::optional<double> fable_threshold) {
  if (signal.empty()) throw Error(ErrorCode::EmptySignal, "overlap-save of an empty signal");
  if (taps.empty()) throw Error(ErrorCode::AllZeroFilter, "filter has no taps");
  OverlapSaveResult result;
  result.block_length = overlap_save_block_length(window_length);
  const std::size_t block = result.block_length;
  if (taps.size() >= block)
    throw Error(ErrorCode::FilterLongerThanBlock,
                "filter length " + std::to_string(taps.size()) + " needs a block longer than " +
                    std::to_string(block));
  const std::size_t overlap = taps.size() - 1;
  result.step = block - overlap;
  const std::size_t out_len = signal.size() + overlap;

  const FrameConvolver convolver(make_filter_padded(taps, block), method, fable_threshold);

  RealVector padded(overlap, 0.0);
  padded.insert(padded.end(), signal.begin(), signal.end());

  result.samples.reserve(out_len + result.step);
  for (std::size_t start = 0, k = 0; result.samples.size() < out_len;
       start += result.step, ++k) {
    RealVector window(block, 0.0);
    for (std::size_t i = 0; i < block && start + i < padded.size(); ++i)
      window[i] = padded[start + i];

    OverlapSaveBlock info;
    info.index = k;
    info.num_qubits = log2_exact(block);
    info.is_zero = all_zero(window);
    if (info.is_zero) {
      result.samples.insert(result.samples.end(), result.step, 0.0);
    } else {
      ReadoutOptions block_readout = readout;
      block_readout.seed = readout.seed + k;
      const auto conv = convolver.convolve(encode_padded(window, block, k), block_readout);
      info.ledger = conv.ledger;
      result.samples.insert(result.samples.end(),
                            conv.output.begin() + static_cast<std::ptrdiff_t>(overlap),
                            conv.output.end());
    }
    result.blocks.push_back(std::move(info));
  }
  result.samples.resize(out_len);
  return result;
}

}  // namespace stqft
