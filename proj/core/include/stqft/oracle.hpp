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

#include <optional>
#include <span>
#include <vector>

#include "stqft/linalg.hpp"

/// Naive classical DSP used as ground truth. Nothing here shares code with
/// the simulator; keep it that way.
namespace stqft::oracle {

struct Signal {
  RealVector samples;
  std::optional<double> sample_rate;  // Hz, metadata only
};

/// Throws InvalidState if any sample is NaN or infinite.
void require_finite(std::span<const double> samples);

/// Linear convolution, length |x| + |h| - 1.
RealVector direct_convolution(std::span<const double> x, std::span<const double> h);

/// Convolution modulo `block`; requires |x|, |h| <= block.
RealVector circular_convolution(std::span<const double> x, std::span<const double> h,
                                std::size_t block);

/// Sums frame k at offset k * hop.
RealVector classical_ola(const std::vector<RealVector>& frames, std::size_t hop);

/// Overlap-save with block length `block`: the signal is prefixed with
/// |h| - 1 zeros, blocks step by block - |h| + 1, the first |h| - 1 outputs of
/// each circular block are discarded. Returns |x| + |h| - 1 samples (the full
/// linear convolution).
RealVector classical_ols(std::span<const double> x, std::span<const double> h,
                         std::size_t block);

/// Dense O(M^2) DFT, X[k] = sum_j x[j] exp(-2 pi i jk / M) / sqrt(M).
ComplexVector unitary_dft(std::span<const Complex> x);
ComplexVector unitary_idft(std::span<const Complex> x);
ComplexVector unitary_dft(std::span<const double> x);

}  // namespace stqft::oracle
