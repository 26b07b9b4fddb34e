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


#include "stqft/pipeline.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stqft/oracle.hpp"
#include "stqft/signal_io.hpp"
#include "test_util.hpp"

using namespace stqft;
using stqft::testing::random_real;
namespace fs = std::filesystem;

namespace {

PipelineConfig config_for(ConvMethod m, Reconstruction r) {
  PipelineConfig c;
  c.method = m;
  c.reconstruction = r;
  c.window_length = 16;
  c.verify = true;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Validate, Rules) {
  PipelineConfig c;
  EXPECT_NO_THROW(validate(c));
  c.hop = 17;
  EXPECT_STQFT_ERROR(validate(c), ErrorCode::ConfigError);
  c.hop = 8;  // ola needs hop == window
  EXPECT_STQFT_ERROR(validate(c), ErrorCode::ConfigError);
  c.reconstruction = Reconstruction::None;
  EXPECT_NO_THROW(validate(c));
  c.readout = ReadoutMode::Sampled;
  c.shots = 0;
  EXPECT_STQFT_ERROR(validate(c), ErrorCode::ConfigError);
  c = PipelineConfig{};
  c.method = ConvMethod::Register;
  c.fable = true;
  EXPECT_STQFT_ERROR(validate(c), ErrorCode::ConfigError);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorCode::ConfigError), 1);
  EXPECT_EQ(exit_code_for(ErrorCode::InvalidFraming), 1);
  EXPECT_EQ(exit_code_for(ErrorCode::MalformedFile), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::MultichannelUnsupported), 2);
  EXPECT_EQ(exit_code_for(ErrorCode::ZeroProbabilityOutcome), 3);
}

TEST(Pipeline, DeltaFilterBlockOla) {
  const auto x = random_real(100);
  const auto res = run_pipeline(x, RealVector{1.0}, config_for(ConvMethod::Block, Reconstruction::Ola));
  ASSERT_TRUE(res.report.max_abs_error.has_value());
  EXPECT_LE(*res.report.max_abs_error, 1e-8);
  EXPECT_EQ(res.output.size(), x.size());
}

TEST(Pipeline, AllMethodsAndReconstructionsMatchOracle) {
  const auto x = random_real(1024);
  const auto h = random_real(8);
  for (auto m : {ConvMethod::Register, ConvMethod::Block})
    for (auto r : {Reconstruction::Ola, Reconstruction::Ols, Reconstruction::None}) {
      const auto res = run_pipeline(x, h, config_for(m, r));
      ASSERT_TRUE(res.report.max_abs_error.has_value());
      EXPECT_LE(*res.report.max_abs_error, 1e-8)
          << "method " << int(m) << " recon " << int(r);
      if (r != Reconstruction::Ols) {
        EXPECT_EQ(res.report.total_frames(), 64U);
      }
    }
}

TEST(Pipeline, FableBlockPath) {
  const auto x = random_real(64);
  const auto h = random_real(4);
  auto c = config_for(ConvMethod::Block, Reconstruction::Ola);
  c.window_length = 4;
  c.fable = true;
  const auto res = run_pipeline(x, h, c);
  ASSERT_TRUE(res.report.fable_max_error.has_value());
  EXPECT_LT(*res.report.fable_max_error, 1e-8);
  EXPECT_LE(*res.report.max_abs_error, 1e-8);
}

TEST(Pipeline, ZeroFramesAreSkipped) {
  RealVector x(64, 0.0);
  for (std::size_t i = 16; i < 32; ++i) x[i] = std::sin(double(i));
  const auto res = run_pipeline(x, RealVector{0.5, -0.3, 0.2},
                                config_for(ConvMethod::Register, Reconstruction::Ola));
  EXPECT_EQ(res.report.skipped_zero_frames, 3U);
  EXPECT_FALSE(res.report.frames[0].conv_probability.has_value());
  EXPECT_TRUE(res.report.frames[1].conv_probability.has_value());
  EXPECT_LE(*res.report.max_abs_error, 1e-10);
}

TEST(Pipeline, DcOffsetIsCorrectedInExactMode) {
  const auto x = random_real(48);
  const auto h = random_real(3);
  for (auto r : {Reconstruction::Ola, Reconstruction::Ols, Reconstruction::None}) {
    auto c = config_for(ConvMethod::Block, r);
    c.dc_offset = 1.0;
    const auto res = run_pipeline(x, h, c);
    EXPECT_LE(*res.report.max_abs_error, 1e-8) << int(r);
  }
}

TEST(Pipeline, SampledModeGuards) {
  auto c = config_for(ConvMethod::Register, Reconstruction::Ola);
  c.readout = ReadoutMode::Sampled;
  EXPECT_STQFT_ERROR(run_pipeline(RealVector{1, -1}, RealVector{1}, c), ErrorCode::ConfigError);
  EXPECT_STQFT_ERROR(run_pipeline(RealVector{1, 1}, RealVector{-1}, c), ErrorCode::ConfigError);
  c.dc_offset = 0.5;
  EXPECT_STQFT_ERROR(run_pipeline(RealVector{1, -1}, RealVector{1}, c),
                     ErrorCode::InsufficientOffset);
}

TEST(Pipeline, SampledModeIsDeterministicPerSeed) {
  RealVector x = random_real(64, stqft::testing::test_rng(), 0.0, 1.0);
  auto c = config_for(ConvMethod::Block, Reconstruction::Ola);
  c.readout = ReadoutMode::Sampled;
  c.shots = 20000;
  c.seed = 11;
  const auto a = run_pipeline(x, RealVector{0.5, 0.5}, c);
  const auto b = run_pipeline(x, RealVector{0.5, 0.5}, c);
  EXPECT_EQ(a.output, b.output);
  c.threads = 1;
  EXPECT_EQ(run_pipeline(x, RealVector{0.5, 0.5}, c).output, a.output);
}

TEST(Pipeline, FrameErrorsNameTheFrame) {
  auto c = config_for(ConvMethod::Block, Reconstruction::Ola);
  c.window_length = 3;  // padded length 8 leaves an overlap of 5 > hop 3
  try {
    run_pipeline(random_real(12), random_real(3), c);
    FAIL() << "expected OverlapTooLarge";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverlapTooLarge);
  }
}

TEST(PipelineFiles, EndToEndAndReportIsDeterministic) {
  const auto dir = fs::temp_directory_path() / "stqft_pipeline_test";
  fs::create_directories(dir);
  const auto x = random_real(200);
  io::write_signal((dir / "in.csv").string(), x);
  io::write_signal((dir / "h.csv").string(), RealVector{0.25, 0.5, 0.25});

  PipelineConfig c = config_for(ConvMethod::Register, Reconstruction::Ola);
  c.input_path = (dir / "in.csv").string();
  c.filter_path = (dir / "h.csv").string();
  c.output_path = (dir / "out.csv").string();
  c.report_path = (dir / "report.jsonl").string();
  std::ostringstream err;
  ASSERT_EQ(run_pipeline(c, err), 0) << err.str();
  const auto first_out = slurp(dir / "out.csv");
  const auto first_report = slurp(dir / "report.jsonl");
  ASSERT_EQ(run_pipeline(c, err), 0);
  EXPECT_EQ(slurp(dir / "out.csv"), first_out);
  EXPECT_EQ(slurp(dir / "report.jsonl"), first_report);

  std::istringstream lines(first_report);
  std::string line;
  std::size_t frames = 0;
  nlohmann::json aggregate;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    if (j["type"] == "frame") ++frames;
    else aggregate = j;
  }
  EXPECT_EQ(frames, 13U);
  EXPECT_EQ(aggregate["total_frames"], 13);
  EXPECT_LE(aggregate["max_abs_error"].get<double>(), 1e-8);

  const auto y = io::read_signal(c.output_path).samples;
  EXPECT_LT(max_abs_diff(y, oracle::direct_convolution(x, RealVector{0.25, 0.5, 0.25})), 1e-8);

  c.input_path = (dir / "missing.csv").string();
  EXPECT_EQ(run_pipeline(c, err), kExitIo);
  c.hop = 32;
  EXPECT_EQ(run_pipeline(c, err), kExitConfig);
  fs::remove_all(dir);
}
