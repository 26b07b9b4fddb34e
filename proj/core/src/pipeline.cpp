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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "stqft/error.hpp"
#include "stqft/oracle.hpp"
#include "stqft/reconstruct.hpp"
#include "stqft/signal_io.hpp"

namespace stqft {

namespace {

using nlohmann::ordered_json;

// Runs fn(0..count-1) on a small pool. Results must be written by index; the
// lowest-index failure is rethrown so diagnostics do not depend on timing.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  unsigned workers = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

[[noreturn]] void rethrow_for_frame(const Error& e, std::size_t index) {
  throw Error(e.code(), "frame " + std::to_string(index) + ": " + e.what());
}

const char* method_name(ConvMethod m) { return m == ConvMethod::Register ? "register" : "block"; }

const char* recon_name(Reconstruction r) {
  switch (r) {
    case Reconstruction::Ola: return "ola";
    case Reconstruction::Ols: return "ols";
    case Reconstruction::None: return "none";
  }
  return "?";
}

ordered_json ledger_json(const ScaleLedger& l) {
  ordered_json j;
  j["frame_norm"] = l.frame_norm;
  j["filter_norm"] = l.filter_norm;
  j["qft_factor"] = l.qft_factor;
  j["success_probs"] = l.success_probs;
  j["subnormalization"] = l.subnormalization;
  j["dc_offset"] = l.dc_offset;
  j["rescale_factor"] = l.rescale_factor();
  return j;
}

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

void check_inputs(std::span<const double> signal, std::span<const double> taps,
                  const PipelineConfig& config) {
  if (signal.empty()) throw Error(ErrorCode::EmptySignal, "input signal is empty");
  if (taps.empty()) throw Error(ErrorCode::AllZeroFilter, "filter file has no taps");
  oracle::require_finite(signal);
  oracle::require_finite(taps);
  if (config.readout != ReadoutMode::Sampled) return;
  if (std::any_of(taps.begin(), taps.end(), [](double t) { return t < 0.0; }))
    throw Error(ErrorCode::ConfigError,
                "sampled readout needs non-negative filter taps (amplitude signs are not observable)");
  const bool negative_input =
      std::any_of(signal.begin(), signal.end(), [](double x) { return x < 0.0; });
  if (negative_input && !config.dc_offset)
    throw Error(ErrorCode::ConfigError,
                "sampled readout of a signal with negative samples requires --dc-offset");
}

struct FrameOutcome {
  RealVector output;
  FrameRecord record;
};

FrameOutcome convolve_frame(const Frame& frame, const FrameConvolver& convolver,
                            const PipelineConfig& config, double dc_offset) {
  FrameOutcome out;
  const std::size_t length = convolver.filter().padded_length;
  out.record.index = frame.index;
  out.record.is_zero = frame.is_zero;
  out.record.num_qubits = log2_exact(length);
  if (frame.is_zero) {
    out.output.assign(length, 0.0);
    return out;
  }
  try {
    const auto encoded = pad_and_encode(frame, convolver.filter().filter_length());
    const ReadoutOptions readout{config.readout, config.shots, config.seed + frame.index};
    auto conv = convolver.convolve(encoded, readout);
    conv.ledger.dc_offset = dc_offset;
    out.record.conv_probability = conv.ledger.success_probs.front();
    out.record.ledger = conv.ledger;
    out.output = std::move(conv.output);
  } catch (const Error& e) {
    rethrow_for_frame(e, frame.index);
  }
  return out;
}

}  // namespace

void validate(const PipelineConfig& config) {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigError, what); };
  if (config.window_length == 0) fail("--window must be at least 1");
  const std::size_t hop = config.effective_hop();
  if (hop == 0 || hop > config.window_length)
    fail("--hop must lie in [1, --window] (hop=" + std::to_string(hop) +
         ", window=" + std::to_string(config.window_length) + ")");
  if (config.reconstruction == Reconstruction::Ola && hop != config.window_length)
    fail("--recon ola uses rectangular windows and needs --hop equal to --window");
  if (config.readout == ReadoutMode::Sampled && config.shots == 0)
    fail("--shots must be at least 1 for sampled readout");
  if (config.fable && config.method != ConvMethod::Block)
    fail("--fable applies to --method block only");
  if (!(config.fable_threshold >= 0.0)) fail("--fable-threshold must be >= 0");
  if (config.dc_offset && !std::isfinite(*config.dc_offset)) fail("--dc-offset must be finite");
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InsufficientOffset:
    case ErrorCode::InvalidFraming:
      return kExitConfig;
    case ErrorCode::FileError:
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::MalformedFile:
    case ErrorCode::MultichannelUnsupported:
      return kExitIo;
    default:
      return kExitPipeline;
  }
}

PipelineResult run_pipeline(std::span<const double> signal, std::span<const double> taps,
                            const PipelineConfig& config) {
  validate(config);
  check_inputs(signal, taps, config);

  const double dc = config.dc_offset.value_or(0.0);
  const RealVector shifted = config.dc_offset ? apply_dc_offset(signal, dc)
                                              : RealVector(signal.begin(), signal.end());
  const std::optional<double> fable =
      config.fable ? std::optional<double>(config.fable_threshold) : std::nullopt;

  PipelineResult result;
  RunReport& report = result.report;

  if (config.reconstruction == Reconstruction::Ols) {
    const ReadoutOptions readout{config.readout, config.shots, config.seed};
    auto ols = overlap_save_stream(shifted, taps, config.window_length, config.method, readout,
                                   fable);
    for (const auto& block : ols.blocks) {
      FrameRecord rec;
      rec.index = block.index;
      rec.is_zero = block.is_zero;
      rec.num_qubits = block.num_qubits;
      rec.ledger = block.ledger;
      if (!block.is_zero) {
        rec.conv_probability = block.ledger.success_probs.front();
        rec.ledger.dc_offset = dc;
      }
      report.frames.push_back(std::move(rec));
    }
    result.output = std::move(ols.samples);
    if (config.dc_offset) {
      const auto correction = dc_correction(dc, signal.size(), taps);
      for (std::size_t i = 0; i < result.output.size(); ++i) result.output[i] -= correction[i];
    }
  } else {
    const std::size_t hop = config.effective_hop();
    const FrameStream stream = frame_signal(shifted, config.window_length, hop);
    const FrameConvolver convolver(make_filter(taps, config.window_length), config.method, fable);
    if (convolver.fable()) report.fable_max_error = convolver.fable()->max_error;

    std::vector<FrameOutcome> outcomes(stream.frames.size());
    parallel_for(stream.frames.size(), config.threads, [&](std::size_t k) {
      outcomes[k] = convolve_frame(stream.frames[k], convolver, config, dc);
    });

    std::vector<RealVector> frame_outputs;
    frame_outputs.reserve(outcomes.size());
    for (auto& o : outcomes) {
      frame_outputs.push_back(std::move(o.output));
      report.frames.push_back(std::move(o.record));
    }

    if (config.reconstruction == Reconstruction::Ola) {
      // Distinct seed stream from the per-frame convolutions.
      const ReadoutOptions readout{config.readout, config.shots,
                                   config.seed + 0x9E3779B97F4A7C15ULL};
      auto ola = qola_stream(frame_outputs, hop, readout);
      for (std::size_t i = 0; i < ola.pairs.size(); ++i) {
        auto& rec = report.frames[ola.pair_frame[i]];
        rec.qola_probability = ola.pairs[i].success_probability;
        rec.qola_difference_probability = ola.pairs[i].difference_probability;
      }
      report.qola_pairs = ola.pairs.size();
      result.output = std::move(ola.samples);
      result.output.resize(signal.size() + taps.size() - 1, 0.0);
      if (config.dc_offset) {
        const auto correction = dc_correction(dc, signal.size(), taps);
        for (std::size_t i = 0; i < result.output.size(); ++i) result.output[i] -= correction[i];
      }
    } else {
      // Raw per-frame outputs, each padded_length long.
      for (std::size_t k = 0; k < frame_outputs.size(); ++k) {
        auto& out = frame_outputs[k];
        if (config.dc_offset) {
          const std::size_t start = k * hop;
          const std::size_t valid = std::min(config.window_length, signal.size() - start);
          const auto correction = dc_correction(dc, valid, taps);
          for (std::size_t i = 0; i < correction.size() && i < out.size(); ++i)
            out[i] -= correction[i];
        }
        result.output.insert(result.output.end(), out.begin(), out.end());
      }
    }
  }

  report.skipped_zero_frames = static_cast<std::size_t>(std::count_if(
      report.frames.begin(), report.frames.end(), [](const FrameRecord& f) { return f.is_zero; }));
  report.output_length = result.output.size();

  if (config.verify) {
    RealVector expected;
    if (config.reconstruction == Reconstruction::None) {
      const std::size_t hop = config.effective_hop();
      const std::size_t r = padded_length(config.window_length, taps.size());
      const auto stream = frame_signal(signal, config.window_length, hop);
      for (const auto& f : stream.frames) {
        auto y = oracle::direct_convolution(f.samples, taps);
        y.resize(r, 0.0);
        expected.insert(expected.end(), y.begin(), y.end());
      }
    } else {
      expected = oracle::direct_convolution(signal, taps);
    }
    report.max_abs_error = max_abs_diff(result.output, expected);
  }
  return result;
}

void write_report(std::ostream& out, const RunReport& report, const PipelineConfig& config) {
  for (const auto& f : report.frames) {
    ordered_json j;
    j["type"] = "frame";
    j["index"] = f.index;
    j["is_zero"] = f.is_zero;
    j["num_qubits"] = f.num_qubits;
    j["conv_probability"] = optional_json(f.conv_probability);
    j["qola_probability"] = optional_json(f.qola_probability);
    j["qola_difference_probability"] = optional_json(f.qola_difference_probability);
    j["ledger"] = f.is_zero ? ordered_json(nullptr) : ledger_json(f.ledger);
    out << j.dump() << '\n';
  }
  ordered_json agg;
  agg["type"] = "aggregate";
  agg["total_frames"] = report.total_frames();
  agg["skipped_zero_frames"] = report.skipped_zero_frames;
  agg["qola_pairs"] = report.qola_pairs;
  agg["output_length"] = report.output_length;
  agg["method"] = method_name(config.method);
  agg["recon"] = recon_name(config.reconstruction);
  agg["readout"] = config.readout == ReadoutMode::Exact ? "exact" : "sampled";
  agg["window"] = config.window_length;
  agg["hop"] = config.effective_hop();
  if (config.readout == ReadoutMode::Sampled) {
    agg["shots"] = config.shots;
    agg["seed"] = config.seed;
  }
  agg["dc_offset"] = optional_json(config.dc_offset);
  agg["fable_max_error"] = optional_json(report.fable_max_error);
  agg["max_abs_error"] = optional_json(report.max_abs_error);
  out << agg.dump() << '\n';
}

int run_pipeline(const PipelineConfig& config, std::ostream& err) {
  try {
    validate(config);
    if (config.input_path.empty() || config.filter_path.empty() || config.output_path.empty())
      throw Error(ErrorCode::ConfigError, "--input, --filter and --output are required");
    const auto signal = io::read_signal(config.input_path);
    const auto taps = io::read_filter(config.filter_path);
    const auto result = run_pipeline(signal.samples, taps, config);
    io::write_signal(config.output_path, result.output, signal.sample_rate);
    if (!config.report_path.empty()) {
      std::ofstream report(config.report_path, std::ios::binary);
      if (!report) throw Error(ErrorCode::FileError, "cannot open " + config.report_path);
      write_report(report, result.report, config);
      if (!report) throw Error(ErrorCode::FileError, "failed writing " + config.report_path);
    }
    if (result.report.max_abs_error)
      err << "max abs error vs classical oracle: " << *result.report.max_abs_error << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitPipeline;
  }
}

}  // namespace stqft
