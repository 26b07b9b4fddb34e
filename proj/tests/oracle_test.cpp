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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_util.hpp"

using namespace stqft;
using stqft::testing::random_real;

TEST(DirectConvolution, SmallCases) {
  EXPECT_EQ(oracle::direct_convolution(RealVector{1.0}, RealVector{1.0}), RealVector{1.0});
  EXPECT_EQ(oracle::direct_convolution(RealVector{1, 2, 3}, RealVector{1, 1}),
            (RealVector{1, 3, 5, 3}));
  EXPECT_STQFT_ERROR(oracle::direct_convolution(RealVector{}, RealVector{1.0}),
                     ErrorCode::EmptyInput);
}

TEST(CircularConvolution, WrapSum) {
  EXPECT_EQ(oracle::circular_convolution(RealVector{1, 2, 3, 4}, RealVector{1, 1}, 4),
            (RealVector{5, 3, 5, 7}));
}

TEST(CircularConvolution, LongBlockEqualsLinear) {
  const auto x = random_real(7);
  const auto h = random_real(4);
  auto lin = oracle::direct_convolution(x, h);
  const auto circ = oracle::circular_convolution(x, h, 16);
  lin.resize(16, 0.0);
  EXPECT_LT(max_abs_diff(circ, lin), 1e-14);
}

TEST(CircularConvolution, DeltaIsIdentity) {
  const auto x = random_real(8);
  EXPECT_EQ(oracle::circular_convolution(x, RealVector{1.0}, 8), x);
  EXPECT_STQFT_ERROR(oracle::circular_convolution(x, RealVector{1.0}, 4), ErrorCode::BlockTooSmall);
}

TEST(ClassicalOla, HandCase) {
  EXPECT_EQ(oracle::classical_ola({{1, 2}, {3, 4}}, 1), (RealVector{1, 5, 4}));
}

TEST(ClassicalOla, FramewiseConvolutionEqualsDirect) {
  const auto x = random_real(40);
  const auto h = random_real(5);
  std::vector<RealVector> frames;
  for (std::size_t s = 0; s < x.size(); s += 8)
    frames.push_back(oracle::direct_convolution(std::span(x).subspan(s, 8), h));
  auto ola = oracle::classical_ola(frames, 8);
  const auto direct = oracle::direct_convolution(x, h);
  ASSERT_EQ(ola.size(), direct.size());
  EXPECT_LT(max_abs_diff(ola, direct), 1e-12);
}

TEST(ClassicalOls, EqualsDirect) {
  for (std::size_t len : {1U, 5U, 32U, 97U}) {
    const auto x = random_real(len);
    const auto h = random_real(4);
    const auto ols = oracle::classical_ols(x, h, 8);
    const auto direct = oracle::direct_convolution(x, h);
    ASSERT_EQ(ols.size(), direct.size());
    EXPECT_LT(max_abs_diff(ols, direct), 1e-12) << "len=" << len;
  }
  EXPECT_STQFT_ERROR(oracle::classical_ols(RealVector{1, 2}, RealVector{1, 1, 1, 1}, 4),
                     ErrorCode::BlockTooSmall);
}

TEST(UnitaryDft, InversePairAndConvolutionTheorem) {
  for (std::size_t m : {2U, 4U, 8U, 16U}) {
    const auto xr = random_real(m);
    const auto x = oracle::unitary_dft(xr);
    const auto back = oracle::unitary_idft(x);
    double err = 0.0;
    for (std::size_t i = 0; i < m; ++i) err = std::max(err, std::abs(back[i] - xr[i]));
    EXPECT_LT(err, 1e-12);

    auto a = random_real(m), b = random_real(m);
    const double na = norm(a), nb = norm(b);
    for (auto& v : a) v /= na;
    for (auto& v : b) v /= nb;
    const auto fa = oracle::unitary_dft(a), fb = oracle::unitary_dft(b);
    ComplexVector prod(m);
    for (std::size_t k = 0; k < m; ++k) prod[k] = fa[k] * fb[k];
    const auto conv = oracle::unitary_idft(prod);
    const auto expected = oracle::circular_convolution(a, b, m);
    for (std::size_t k = 0; k < m; ++k)
      EXPECT_NEAR(conv[k].real() * std::sqrt(double(m)), expected[k], 1e-12);
  }
}

TEST(RequireFinite, RejectsNan) {
  EXPECT_NO_THROW(oracle::require_finite(RealVector{1.0, -2.0}));
  EXPECT_STQFT_ERROR(oracle::require_finite(RealVector{1.0, std::numeric_limits<double>::quiet_NaN()}),
                     ErrorCode::InvalidState);
}
