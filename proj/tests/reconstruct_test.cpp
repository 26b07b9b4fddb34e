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

#include <gtest/gtest.h>

#include <cmath>

#include "stqft/oracle.hpp"
#include "test_util.hpp"

using namespace stqft;
using stqft::testing::random_real;

namespace {

double sq(const RealVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

// Classical pair OLA: b shifted by r - l into a 2r buffer.
RealVector pair_ola(const RealVector& a, const RealVector& b, std::size_t l) {
  auto out = oracle::classical_ola({a, b}, a.size() - l);
  out.resize(2 * a.size(), 0.0);
  return out;
}

}  // namespace

TEST(Uperm, TwoByOne) {
  const auto p = build_uperm(2, 1);
  EXPECT_EQ(p.source, (std::vector<std::size_t>{0, 2, 3, 1}));
  for (std::size_t row = 0; row < 4; ++row)
    for (std::size_t col = 0; col < 4; ++col)
      EXPECT_EQ(p.matrix(row, col), Complex(col == p.source[row] ? 1.0 : 0.0));
}

TEST(Uperm, ZeroOverlapIsIdentity) {
  for (std::size_t r : {1U, 2U, 4U, 8U})
    EXPECT_EQ(max_abs_diff(build_uperm(r, 0).matrix, CMatrix::identity(2 * r)), 0.0);
}

TEST(Uperm, PermutationPropertyExhaustive) {
  for (std::size_t r = 1; r <= 8; ++r)
    for (std::size_t l = 0; l < r; ++l) {
      const auto p = build_uperm(r, l);
      std::vector<int> hits(2 * r, 0);
      for (auto s : p.source) ++hits[s];
      for (int h : hits) EXPECT_EQ(h, 1);
      EXPECT_EQ(max_abs_diff(p.matrix * p.matrix.adjoint(), CMatrix::identity(2 * r)), 0.0);
      // Second frame lands r - l rows down.
      for (std::size_t i = 0; i < r; ++i) EXPECT_EQ(p.source[r - l + i], r + i);
    }
  EXPECT_STQFT_ERROR(build_uperm(4, 4), ErrorCode::InvalidOverlap);
  EXPECT_STQFT_ERROR(build_uperm(0, 0), ErrorCode::InvalidOverlap);
}

TEST(QolaPair, OverlapOfTwo) {
  const auto res = qola_pair(RealVector{1, 2, 3, 4}, RealVector{5, 6, 7, 8}, 2);
  EXPECT_LT(max_abs_diff(res.sum_vector, RealVector{1, 2, 8, 10, 7, 8, 0, 0}), 1e-12);
  EXPECT_NEAR(res.success_probability, 282.0 / 408.0, 1e-15);
  EXPECT_NEAR(res.pair_norm * res.pair_norm, 204.0, 1e-12);
}

TEST(QolaPair, NoOverlapConcatenates) {
  const auto res = qola_pair(RealVector{1, 2, 3, 4}, RealVector{5, 6, 7, 8}, 0);
  EXPECT_LT(max_abs_diff(res.sum_vector, RealVector{1, 2, 3, 4, 5, 6, 7, 8}), 1e-12);
  EXPECT_NEAR(res.success_probability, 0.5, 1e-15);
}

TEST(QolaPair, OppositeFramesPushEnergyIntoDifference) {
  // A smooth frame minus its one-sample shift leaves little in SUM.
  const RealVector a = {1.0, 2.0, 3.0, 4.0};
  const RealVector b = {-1.0, -2.0, -3.0, -4.0};
  const auto res = qola_pair(a, b, 3);
  // Brute force branch norms: SUM = a + shift(b), DIFFERENCE = a - shift(b).
  RealVector sum = pair_ola(a, b, 3);
  RealVector bn = b;
  for (auto& v : bn) v = -v;
  RealVector diff = pair_ola(a, bn, 3);
  const double m2 = sq(a) + sq(b);
  EXPECT_NEAR(res.success_probability, sq(sum) / (2 * m2), 1e-15);
  EXPECT_NEAR(res.difference_probability, sq(diff) / (2 * m2), 1e-15);
  EXPECT_NEAR(res.success_probability, 20.0 / 120.0, 1e-15);  // SUM = [1,1,1,1,-4,0,0,0]
  EXPECT_LT(res.success_probability, 0.5);
  EXPECT_GT(res.difference_probability, 0.5);
  EXPECT_LT(max_abs_diff(res.sum_vector, sum), 1e-12);
  EXPECT_LT(max_abs_diff(res.difference_vector, diff), 1e-12);
}

TEST(QolaPair, ParallelogramLawAndOracleOnRandomPairs) {
  for (std::size_t r : {1U, 2U, 4U, 8U, 16U})
    for (std::size_t l = 0; l < r; ++l) {
      const auto a = random_real(r), b = random_real(r);
      const auto res = qola_pair(a, b, l);
      const double m2 = res.pair_norm * res.pair_norm;
      EXPECT_NEAR(0.5 * sq(res.sum_vector) + 0.5 * sq(res.difference_vector), m2, 1e-12 * m2);
      EXPECT_NEAR(res.success_probability + res.difference_probability, 1.0, 1e-12);
      EXPECT_LT(max_abs_diff(res.sum_vector, pair_ola(a, b, l)), 1e-10);
    }
}

TEST(QolaPair, NonPowerOfTwoFramesKeepTheShift) {
  const RealVector a = {1, 2, 3}, b = {4, 5, 6};
  const auto res = qola_pair(a, b, 1);
  auto expected = oracle::classical_ola({a, b}, 2);
  expected.resize(res.sum_vector.size(), 0.0);
  EXPECT_LT(max_abs_diff(res.sum_vector, expected), 1e-12);
}

TEST(QolaPair, OneZeroFrameStillEncodes) {
  const RealVector a = {0, 0, 0, 0}, b = {1, -1, 2, 0.5};
  const auto res = qola_pair(a, b, 1);
  EXPECT_LT(max_abs_diff(res.sum_vector, pair_ola(a, b, 1)), 1e-12);
}

TEST(QolaPair, Errors) {
  EXPECT_STQFT_ERROR(qola_pair(RealVector{0, 0}, RealVector{0, 0}, 1), ErrorCode::AllZeroPair);
  EXPECT_STQFT_ERROR(qola_pair(RealVector{1, 2}, RealVector{1, 2}, 2), ErrorCode::InvalidOverlap);
  EXPECT_STQFT_ERROR(qola_pair(RealVector{1, 2}, RealVector{1}, 0), ErrorCode::DimensionMismatch);
  // Full cancellation at l = 0 is impossible; with l = r - 1 and an a whose
  // tail cancels b's head exactly and nothing else, SUM vanishes.
  EXPECT_STQFT_ERROR(qola_pair(RealVector{0, 1}, RealVector{-1, 0}, 1),
                     ErrorCode::ZeroProbabilityOutcome);
}

TEST(QolaStream, TwoFramesEqualClassicalOla) {
  const std::vector<RealVector> frames = {random_real(8), random_real(8)};
  const auto res = qola_stream(frames, 4);
  EXPECT_EQ(res.pairs.size(), 1U);
  EXPECT_LT(max_abs_diff(res.samples, oracle::classical_ola(frames, 4)), 1e-12);
}

TEST(QolaStream, LongStreamsEqualClassicalOla) {
  for (std::size_t hop : {4U, 5U, 6U, 8U}) {
    std::vector<RealVector> frames;
    for (int k = 0; k < 9; ++k) frames.push_back(random_real(8));
    const auto res = qola_stream(frames, hop);
    const auto expected = oracle::classical_ola(frames, hop);
    ASSERT_EQ(res.samples.size(), expected.size());
    EXPECT_LT(max_abs_diff(res.samples, expected), 1e-10) << "hop=" << hop;
  }
}

TEST(QolaStream, ZeroFramesSkipQuantumCalls) {
  const std::vector<RealVector> frames(4, RealVector(4, 0.0));
  const auto res = qola_stream(frames, 2);
  EXPECT_TRUE(res.pairs.empty());
  EXPECT_EQ(res.classical_merges, 3U);
  for (double v : res.samples) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(res.samples.size(), 10U);
}

TEST(QolaStream, SingleFrame) {
  const RealVector f = {1, -2, 3};
  EXPECT_EQ(qola_stream({f}, 3).samples, f);
}

TEST(QolaStream, CancellationYieldsZeroMerge) {
  const std::vector<RealVector> frames = {{0, 1}, {-1, 0}};
  const auto res = qola_stream(frames, 1);
  EXPECT_LT(max_abs_diff(res.samples, RealVector{0, 0, 0}), 1e-15);
}

TEST(QolaStream, Errors) {
  const std::vector<RealVector> frames = {random_real(8), random_real(8)};
  EXPECT_STQFT_ERROR(qola_stream(frames, 3), ErrorCode::OverlapTooLarge);
  EXPECT_STQFT_ERROR(qola_stream(frames, 9), ErrorCode::InvalidOverlap);
  EXPECT_STQFT_ERROR(qola_stream({RealVector(4, 1.0), RealVector(2, 1.0)}, 2),
                     ErrorCode::DimensionMismatch);
}

TEST(OverlapSave, DeltaFilterIsIdentity) {
  const auto x = random_real(50);
  const auto res = overlap_save_stream(x, RealVector{1.0}, 8, ConvMethod::Block);
  ASSERT_EQ(res.samples.size(), x.size());
  EXPECT_LT(max_abs_diff(res.samples, x), 1e-12);
}

TEST(OverlapSave, MatchesDirectConvolution) {
  const auto x = random_real(32);
  const RealVector h = {1, 1};
  for (auto method : {ConvMethod::Register, ConvMethod::Block}) {
    const auto res = overlap_save_stream(x, h, 8, method);
    EXPECT_EQ(res.block_length, 8U);
    EXPECT_EQ(res.step, 7U);
    EXPECT_LT(max_abs_diff(res.samples, oracle::direct_convolution(x, h)), 1e-10);
  }
}

TEST(OverlapSave, AgreesWithOla) {
  const auto x = random_real(64);
  const auto h = random_real(5);
  const auto ols = overlap_save_stream(x, h, 16, ConvMethod::Register);
  std::vector<RealVector> frames;
  for (std::size_t s = 0; s < x.size(); s += 16) {
    const auto e = encode_padded(std::span(x).subspan(s, 16), 32, s / 16);
    frames.push_back(conv_register_method(e, make_filter_padded(h, 32)).output);
  }
  auto ola = qola_stream(frames, 16).samples;
  ola.resize(ols.samples.size());
  EXPECT_LT(max_abs_diff(ola, ols.samples), 1e-8);
}

TEST(OverlapSave, FilterLongerThanBlock) {
  EXPECT_STQFT_ERROR(overlap_save_stream(random_real(20), random_real(8), 8, ConvMethod::Block),
                     ErrorCode::FilterLongerThanBlock);
}
