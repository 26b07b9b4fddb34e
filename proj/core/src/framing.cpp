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

#include "stqft/framing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stqft/error.hpp"

namespace stqft {

std::size_t FrameStream::zero_frame_count() const {
  return static_cast<std::size_t>(
      std::count_if(frames.begin(), frames.end(), [](const Frame& f) { return f.is_zero; }));
}

double ScaleLedger::rescale_factor() const {
  double factor = frame_norm * filter_norm * qft_factor * subnormalization;
  for (double p : success_probs) factor *= std::sqrt(p);
  return factor;
}

std::size_t padded_length(std::size_t window_length, std::size_t filter_length) {
  if (window_length == 0 || filter_length == 0)
    throw Error(ErrorCode::InvalidFraming, "window and filter lengths must be positive");
  return std::max<std::size_t>(2, next_power_of_two(window_length + filter_length - 1));
}

FrameStream frame_signal(std::span<const double> signal, std::size_t window_length,
                         std::size_t hop) {
  if (signal.empty()) throw Error(ErrorCode::EmptySignal, "cannot frame an empty signal");
  if (window_length == 0 || hop == 0 || hop > window_length)
    throw Error(ErrorCode::InvalidFraming, "require w_l >= 1 and 1 <= hop <= w_l (w_l=" +
                                               std::to_string(window_length) +
                                               ", hop=" + std::to_string(hop) + ")");
  FrameStream stream;
  stream.window_length = window_length;
  stream.hop = hop;
  stream.signal_length = signal.size();
  for (std::size_t start = 0, k = 0; start < signal.size(); start += hop, ++k) {
    Frame f;
    f.index = k;
    f.window_length = window_length;
    f.samples.assign(window_length, 0.0);
    const std::size_t take = std::min(window_length, signal.size() - start);
    std::copy_n(signal.begin() + static_cast<std::ptrdiff_t>(start), take, f.samples.begin());
    f.is_zero = std::all_of(f.samples.begin(), f.samples.end(), [](double x) { return x == 0.0; });
    stream.frames.push_back(std::move(f));
  }
  return stream;
}

EncodedFrame encode_padded(std::span<const double> samples, std::size_t length,
                           std::size_t index) {
  if (length < 2 || !is_power_of_two(length) || samples.size() > length)
    throw Error(ErrorCode::InvalidFraming,
                "padded length " + std::to_string(length) + " cannot hold " +
                    std::to_string(samples.size()) + " samples");
  RealVector padded(length, 0.0);
  std::copy(samples.begin(), samples.end(), padded.begin());
  const double frame_norm = norm(padded);
  if (frame_norm == 0.0)
    throw Error(ErrorCode::AllZeroFrame,
                "frame " + std::to_string(index) + " is all zero and cannot be encoded");
  EncodedFrame out{QuantumState::normalized(padded), {}, index, samples.size()};
  out.ledger.frame_norm = frame_norm;
  return out;
}

EncodedFrame pad_and_encode(const Frame& frame, std::size_t filter_length) {
  if (frame.is_zero)
    throw Error(ErrorCode::AllZeroFrame,
                "frame " + std::to_string(frame.index) + " is all zero and cannot be encoded");
  auto out = encode_padded(frame.samples, padded_length(frame.samples.size(), filter_length),
                           frame.index);
  out.window_length = frame.window_length;
  return out;
}

RealVector decode_frame(const EncodedFrame& frame) {
  auto samples = frame.state.real_amplitudes();
  for (auto& s : samples) s *= frame.ledger.frame_norm;
  return samples;
}

RealVector apply_dc_offset(std::span<const double> signal, double offset) {
  double lowest = 0.0;
  for (double x : signal) lowest = std::min(lowest, x);
  if (offset < -lowest)
    throw Error(ErrorCode::InsufficientOffset,
                "offset " + std::to_string(offset) + " does not lift minimum " +
                    std::to_string(lowest) + " to zero");
  RealVector out(signal.begin(), signal.end());
  for (auto& x : out) x += offset;
  return out;
}

RealVector dc_correction(double offset, std::size_t run_length, std::span<const double> filter) {
  if (run_length == 0 || filter.empty())
    throw Error(ErrorCode::EmptyInput, "dc correction needs a nonempty run and filter");
  RealVector out(run_length + filter.size() - 1, 0.0);
  for (std::size_t i = 0; i < run_length; ++i)
    for (std::size_t j = 0; j < filter.size(); ++j) out[i + j] += offset * filter[j];
  return out;
}

}  // namespace stqft
