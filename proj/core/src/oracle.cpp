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

#include "stqft/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "stqft/error.hpp"

namespace stqft::oracle {

namespace {

ComplexVector dense_dft(std::span<const Complex> x, double sign) {
  const std::size_t m = x.size();
  if (m == 0) throw Error(ErrorCode::EmptyInput, "DFT of an empty vector");
  ComplexVector out(m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t k = 0; k < m; ++k) {
    Complex acc{};
    for (std::size_t j = 0; j < m; ++j) {
      // Reduce jk mod m first so the angle stays small and exact.
      const auto jk = static_cast<double>((j * k) % m);
      acc += x[j] * std::polar(1.0, sign * 2.0 * std::numbers::pi * jk / static_cast<double>(m));
    }
    out[k] = acc * scale;
  }
  return out;
}

}  // namespace

void require_finite(std::span<const double> samples) {
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (!std::isfinite(samples[i]))
      throw Error(ErrorCode::InvalidState, "non-finite sample at index " + std::to_string(i));
}

RealVector direct_convolution(std::span<const double> x, std::span<const double> h) {
  if (x.empty() || h.empty()) throw Error(ErrorCode::EmptyInput, "convolution of empty input");
  RealVector y(x.size() + h.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) y[i + j] += x[i] * h[j];
  return y;
}

RealVector circular_convolution(std::span<const double> x, std::span<const double> h,
                                std::size_t block) {
  if (x.empty() || h.empty()) throw Error(ErrorCode::EmptyInput, "convolution of empty input");
  if (x.size() > block || h.size() > block)
    throw Error(ErrorCode::BlockTooSmall, "inputs longer than the circular block");
  RealVector y(block, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) y[(i + j) % block] += x[i] * h[j];
  return y;
}

RealVector classical_ola(const std::vector<RealVector>& frames, std::size_t hop) {
  if (hop == 0) throw Error(ErrorCode::DimensionMismatch, "hop must be positive");
  std::size_t length = 0;
  for (std::size_t k = 0; k < frames.size(); ++k)
    length = std::max(length, k * hop + frames[k].size());
  RealVector out(length, 0.0);
  for (std::size_t k = 0; k < frames.size(); ++k)
    for (std::size_t i = 0; i < frames[k].size(); ++i) out[k * hop + i] += frames[k][i];
  return out;
}

RealVector classical_ols(std::span<const double> x, std::span<const double> h,
                         std::size_t block) {
  if (x.empty() || h.empty()) throw Error(ErrorCode::EmptyInput, "overlap-save of empty input");
  if (h.size() >= block)
    throw Error(ErrorCode::BlockTooSmall, "filter must be shorter than the block");
  const std::size_t overlap = h.size() - 1;
  const std::size_t step = block - overlap;
  const std::size_t out_len = x.size() + h.size() - 1;

  RealVector padded(overlap, 0.0);
  padded.insert(padded.end(), x.begin(), x.end());

  RealVector out;
  out.reserve(out_len + step);
  for (std::size_t start = 0; out.size() < out_len; start += step) {
    RealVector window(block, 0.0);
    for (std::size_t i = 0; i < block && start + i < padded.size(); ++i)
      window[i] = padded[start + i];
    const auto y = circular_convolution(window, h, block);
    out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(overlap), y.end());
  }
  out.resize(out_len);
  return out;
}

ComplexVector unitary_dft(std::span<const Complex> x) { return dense_dft(x, -1.0); }

ComplexVector unitary_idft(std::span<const Complex> x) { return dense_dft(x, 1.0); }

ComplexVector unitary_dft(std::span<const double> x) {
  const ComplexVector z(x.begin(), x.end());
  return dense_dft(z, -1.0);
}

}  // namespace stqft::oracle
