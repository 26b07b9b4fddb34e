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

#include <gtest/gtest.h>

#include <cmath>

#include "stqft/oracle.hpp"
#include "test_util.hpp"

using namespace stqft;
using stqft::testing::random_real;

namespace {

RealVector padded_linear(std::span<const double> x, std::span<const double> h, std::size_t m) {
  auto y = oracle::direct_convolution(x, h);
  y.resize(m, 0.0);
  return y;
}

}  // namespace

TEST(MakeFilter, DeltaHasUniformCoefficients) {
  const auto f = make_filter_padded(RealVector{1.0}, 4);
  ASSERT_EQ(f.fourier_coeffs.size(), 4U);
  for (const auto& c : f.fourier_coeffs) EXPECT_NEAR(std::abs(c - 0.5), 0.0, 1e-15);
  EXPECT_EQ(f.filter_norm, 1.0);
}

TEST(MakeFilter, CoefficientsMatchDenseDft) {
  const auto f = make_filter_padded(RealVector{1.0, 1.0}, 4);
  const double s = 1.0 / std::sqrt(2.0);
  const auto expected = oracle::unitary_dft(RealVector{s, s, 0.0, 0.0});
  EXPECT_LT(max_abs_diff(f.fourier_coeffs, expected), 1e-15);
  EXPECT_NEAR(norm(f.fourier_coeffs), 1.0, 1e-12);
  for (const auto& c : f.fourier_coeffs) EXPECT_LE(std::abs(c), 1.0);
}

TEST(MakeFilter, PaddedLengthFollowsWindow) {
  const auto f = make_filter(RealVector{1, 2, 3, 4}, 5);
  EXPECT_EQ(f.padded_length, 8U);
  EXPECT_EQ(f.num_qubits(), 3U);
  EXPECT_EQ(f.filter_length(), 4U);
}

TEST(MakeFilter, AllZero) {
  EXPECT_STQFT_ERROR(make_filter(RealVector{0.0, 0.0}, 4), ErrorCode::AllZeroFilter);
}

TEST(RegisterMethod, DeltaFrameDeltaFilter) {
  const auto frame = encode_padded(RealVector{1, 0, 0, 0}, 4);
  const auto filter = make_filter_padded(RealVector{1.0}, 4);
  const auto r = conv_register_method(frame, filter);
  ASSERT_EQ(r.ledger.success_probs.size(), 1U);
  EXPECT_NEAR(r.ledger.success_probs[0], 0.25, 1e-15);
  EXPECT_LT(max_abs_diff(r.output, RealVector{1, 0, 0, 0}), 1e-12);
}

TEST(RegisterMethod, SmallConvolution) {
  const auto frame = encode_padded(RealVector{1, 2}, 4);
  const auto filter = make_filter(RealVector{1, 1}, 2);
  ASSERT_EQ(filter.padded_length, 4U);
  const auto r = conv_register_method(frame, filter);
  EXPECT_LT(max_abs_diff(r.output, RealVector{1, 3, 2, 0}), 1e-12);
  EXPECT_NEAR(r.ledger.qft_factor, 2.0, 1e-15);
}

TEST(RegisterMethod, ProbabilityIsBruteForceProductSum) {
  // P sums over the Fourier-domain registers, so the "uniform registers"
  // case is the delta frame and delta filter test above.
  for (int trial = 0; trial < 20; ++trial) {
    const auto frame = encode_padded(random_real(5), 8);
    const auto filter = make_filter_padded(random_real(3), 8);
    const auto a = oracle::unitary_dft(frame.state.amplitudes());
    double p = 0.0;
    for (std::size_t k = 0; k < 8; ++k) p += std::norm(a[k] * filter.fourier_coeffs[k]);
    const auto r = conv_register_method(frame, filter);
    EXPECT_NEAR(r.ledger.success_probs[0], p, 1e-15);
  }
}

TEST(BlockMethod, SmallConvolution) {
  const auto frame = encode_padded(RealVector{1, 2}, 4);
  const auto filter = make_filter(RealVector{1, 1}, 2);
  const auto r = conv_block_method(frame, filter);
  EXPECT_LT(max_abs_diff(r.output, RealVector{1, 3, 2, 0}), 1e-12);
}

TEST(BlockMethod, DeltaFilterIsIdentity) {
  const auto x = random_real(8);
  const auto frame = encode_padded(x, 8);
  const auto filter = make_filter_padded(RealVector{1.0}, 8);
  const auto r = conv_block_method(frame, filter);
  EXPECT_LT(max_abs_diff(r.output, x), 1e-12);
}

TEST(BlockMethod, ProbabilityIsDiagonalImageNorm) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto frame = encode_padded(random_real(4), 8);
    const auto filter = make_filter_padded(random_real(4), 8);
    const auto a = oracle::unitary_dft(frame.state.amplitudes());
    double q = 0.0;
    for (std::size_t k = 0; k < 8; ++k) q += std::norm(a[k] * filter.fourier_coeffs[k]);
    const auto r = conv_block_method(frame, filter);
    ASSERT_EQ(r.ledger.success_probs.size(), 1U);
    EXPECT_NEAR(r.ledger.success_probs[0], q, 1e-15);
  }
}

TEST(Methods, AgreeWithEachOtherAndOracle) {
  for (unsigned n = 1; n <= 4; ++n) {
    const std::size_t m = std::size_t{1} << n;
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t fl = 1 + std::size_t(trial) % m;
      const std::size_t wl = m - fl + 1;
      const auto x = random_real(wl);
      const auto h = random_real(fl);
      const auto frame = encode_padded(x, m);
      const auto filter = make_filter_padded(h, m);
      const auto reg = conv_register_method(frame, filter);
      const auto blk = conv_block_method(frame, filter);
      const auto expected = padded_linear(x, h, m);
      EXPECT_LT(max_abs_diff(reg.output, blk.output), 1e-10);
      EXPECT_LT(max_abs_diff(reg.output, expected), 1e-10);
      EXPECT_LT(max_abs_diff(blk.output, expected), 1e-10);
    }
  }
}

TEST(Methods, Linearity) {
  const auto x = random_real(5);
  const auto h = random_real(4);
  RealVector x3 = x;
  for (auto& v : x3) v *= -3.0;
  const auto filter = make_filter_padded(h, 8);
  const auto a = conv_block_method(encode_padded(x, 8), filter).output;
  const auto b = conv_block_method(encode_padded(x3, 8), filter).output;
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(b[i], -3.0 * a[i], 1e-12);
}

TEST(Methods, MismatchedLengths) {
  const auto frame = encode_padded(RealVector{1, 2}, 4);
  const auto filter = make_filter_padded(RealVector{1, 1}, 8);
  EXPECT_STQFT_ERROR(conv_register_method(frame, filter), ErrorCode::DimensionMismatch);
  EXPECT_STQFT_ERROR(conv_block_method(frame, filter), ErrorCode::DimensionMismatch);
}

TEST(FrameConvolver, FableCircuitPathMatchesDense) {
  const auto h = random_real(3);
  const auto filter = make_filter_padded(h, 8);
  const FrameConvolver dense(filter, ConvMethod::Block);
  const FrameConvolver gates(filter, ConvMethod::Block, 0.0);
  ASSERT_TRUE(gates.fable().has_value());
  for (int trial = 0; trial < 5; ++trial) {
    const auto frame = encode_padded(random_real(6), 8);
    EXPECT_LT(max_abs_diff(dense.convolve(frame).output, gates.convolve(frame).output), 1e-8);
  }
  EXPECT_STQFT_ERROR(FrameConvolver(filter, ConvMethod::Register, 0.0), ErrorCode::ConfigError);
}

TEST(SampledReadout, NonNegativeCaseWithinThreeSigma) {
  const RealVector x = {0.2, 1.0, 0.5, 0.9, 0.3};
  const RealVector h = {0.5, 0.25, 0.25};
  const auto frame = encode_padded(x, 8);
  const auto filter = make_filter_padded(h, 8);
  const auto exact = conv_register_method(frame, filter);
  ReadoutOptions opts{ReadoutMode::Sampled, 1'000'000, 5};
  const auto sampled = conv_register_method(frame, filter, opts);
  const double scale = exact.ledger.rescale_factor();
  for (std::size_t i = 0; i < 8; ++i) {
    const double p = exact.readout[i] * exact.readout[i];
    const double p_hat = sampled.readout[i] * sampled.readout[i];
    EXPECT_LE(std::abs(p_hat - p), 3.0 * std::sqrt(p * (1 - p) / 1e6) + 1e-15) << i;
    EXPECT_NEAR(sampled.output[i], sampled.readout[i] * scale, 1e-12);
  }
}
