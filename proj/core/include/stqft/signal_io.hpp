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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include "stqft/linalg.hpp"
#include "stqft/oracle.hpp"

namespace stqft::io {

enum class SignalFormat { Csv, Wav };

/// By extension (.csv, .txt -> Csv; .wav -> Wav), case-insensitive.
SignalFormat format_for_path(const std::string& path);

/// One float per line; blank lines are skipped.
RealVector parse_csv(std::istream& in);
void write_csv(std::ostream& out, std::span<const double> samples);

/// 16-bit PCM mono, little-endian; samples are int16 / 32768.
oracle::Signal parse_wav(std::istream& in);
/// Clamps to [-1, 1 - 2^-15] then scales by 32768 with rounding.
void write_wav(std::ostream& out, std::span<const double> samples, double sample_rate);

oracle::Signal read_signal(const std::string& path);
void write_signal(const std::string& path, std::span<const double> samples,
                  std::optional<double> sample_rate = std::nullopt);
/// Filters are CSV only.
RealVector read_filter(const std::string& path);

}  // namespace stqft::io
