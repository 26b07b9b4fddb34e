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

#include "stqft/signal_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>

#include "stqft/error.hpp"

namespace stqft::io {

namespace {

constexpr double kPcmScale = 32768.0;
constexpr double kDefaultSampleRate = 44100.0;

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                                 static_cast<char>((v >> 16) & 0xFF),
                                 static_cast<char>((v >> 24) & 0xFF)};
  out.write(b.data(), 4);
}

void put16(std::ostream& out, std::uint16_t v) {
  const std::array<char, 2> b = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
  out.write(b.data(), 2);
}

void read_exact(std::istream& in, unsigned char* dst, std::size_t n, const char* what) {
  if (!in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n)))
    throw Error(ErrorCode::MalformedFile, std::string("truncated WAV ") + what);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

SignalFormat format_for_path(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv" || ext == ".txt") return SignalFormat::Csv;
  if (ext == ".wav") return SignalFormat::Wav;
  throw Error(ErrorCode::UnsupportedFormat, "unrecognized signal file extension '" + ext + "'");
}

RealVector parse_csv(std::istream& in) {
  RealVector out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string field = trim(line);
    if (field.empty()) continue;
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    // from_chars rejects a leading '+', which some writers emit.
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || !std::isfinite(value))
      throw Error(ErrorCode::MalformedFile,
                  "line " + std::to_string(line_no) + ": '" + field + "' is not a finite number");
    out.push_back(value);
  }
  return out;
}

void write_csv(std::ostream& out, std::span<const double> samples) {
  const auto precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (double s : samples) out << s << '\n';
  out.precision(precision);
}

oracle::Signal parse_wav(std::istream& in) {
  unsigned char riff[12];
  read_exact(in, riff, sizeof riff, "header");
  if (std::string_view(reinterpret_cast<char*>(riff), 4) != "RIFF" ||
      std::string_view(reinterpret_cast<char*>(riff + 8), 4) != "WAVE")
    throw Error(ErrorCode::MalformedFile, "not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  while (true) {
    unsigned char chunk[8];
    if (!in.read(reinterpret_cast<char*>(chunk), sizeof chunk))
      throw Error(ErrorCode::MalformedFile, "WAV has no data chunk");
    const std::string_view id(reinterpret_cast<char*>(chunk), 4);
    const std::uint32_t size = le32(chunk + 4);
    if (id == "fmt ") {
      if (size < 16) throw Error(ErrorCode::MalformedFile, "short fmt chunk");
      std::vector<unsigned char> fmt(size);
      read_exact(in, fmt.data(), size, "fmt chunk");
      const std::uint16_t audio_format = le16(fmt.data());
      channels = le16(fmt.data() + 2);
      rate = le32(fmt.data() + 4);
      bits = le16(fmt.data() + 14);
      if (channels != 1)
        throw Error(ErrorCode::MultichannelUnsupported,
                    "WAV has " + std::to_string(channels) + " channels; only mono is supported");
      if (audio_format != 1 || bits != 16)
        throw Error(ErrorCode::UnsupportedFormat, "only 16-bit integer PCM WAV is supported");
      have_fmt = true;
      if (size % 2) in.ignore(1);
    } else if (id == "data") {
      if (!have_fmt) throw Error(ErrorCode::MalformedFile, "data chunk before fmt chunk");
      if (size % 2) throw Error(ErrorCode::MalformedFile, "odd-sized 16-bit data chunk");
      std::vector<unsigned char> raw(size);
      read_exact(in, raw.data(), size, "data chunk");
      oracle::Signal signal;
      signal.sample_rate = static_cast<double>(rate);
      signal.samples.reserve(size / 2);
      for (std::size_t i = 0; i + 1 < raw.size(); i += 2) {
        const auto v = static_cast<std::int16_t>(le16(raw.data() + i));
        signal.samples.push_back(static_cast<double>(v) / kPcmScale);
      }
      return signal;
    } else {
      in.ignore(static_cast<std::streamsize>(size + (size % 2)));
      if (!in) throw Error(ErrorCode::MalformedFile, "truncated WAV chunk");
    }
  }
}

void write_wav(std::ostream& out, std::span<const double> samples, double sample_rate) {
  const auto rate = static_cast<std::uint32_t>(std::lround(sample_rate));
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  out.write("RIFF", 4);
  put32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put32(out, 16);
  put16(out, 1);  // PCM
  put16(out, 1);  // mono
  put32(out, rate);
  put32(out, rate * 2);
  put16(out, 2);
  put16(out, 16);
  out.write("data", 4);
  put32(out, data_bytes);
  for (double s : samples) {
    const double clamped = std::clamp(s, -1.0, 1.0 - 1.0 / kPcmScale);
    const auto v = static_cast<std::int16_t>(std::lround(clamped * kPcmScale));
    put16(out, static_cast<std::uint16_t>(v));
  }
}

oracle::Signal read_signal(const std::string& path) {
  const SignalFormat format = format_for_path(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileError, "cannot open " + path);
  if (format == SignalFormat::Wav) return parse_wav(in);
  return {parse_csv(in), std::nullopt};
}

void write_signal(const std::string& path, std::span<const double> samples,
                  std::optional<double> sample_rate) {
  const SignalFormat format = format_for_path(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::FileError, "cannot open " + path + " for writing");
  if (format == SignalFormat::Wav)
    write_wav(out, samples, sample_rate.value_or(kDefaultSampleRate));
  else
    write_csv(out, samples);
  if (!out) throw Error(ErrorCode::FileError, "failed writing " + path);
}

RealVector read_filter(const std::string& path) {
  if (format_for_path(path) != SignalFormat::Csv)
    throw Error(ErrorCode::UnsupportedFormat, "filter files must be CSV");
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileError, "cannot open " + path);
  return parse_csv(in);
}

}  // namespace stqft::io
