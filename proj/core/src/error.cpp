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

#include "stqft/error.hpp"

namespace stqft {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidQubitIndex: return "InvalidQubitIndex";
    case ErrorCode::IndexOverlap: return "IndexOverlap";
    case ErrorCode::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidShots: return "InvalidShots";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::EmptySignal: return "EmptySignal";
    case ErrorCode::AllZeroFrame: return "AllZeroFrame";
    case ErrorCode::InsufficientOffset: return "InsufficientOffset";
    case ErrorCode::InvalidFraming: return "InvalidFraming";
    case ErrorCode::AllZeroFilter: return "AllZeroFilter";
    case ErrorCode::EntryMagnitudeExceedsOne: return "EntryMagnitudeExceedsOne";
    case ErrorCode::InvalidOverlap: return "InvalidOverlap";
    case ErrorCode::AllZeroPair: return "AllZeroPair";
    case ErrorCode::OverlapTooLarge: return "OverlapTooLarge";
    case ErrorCode::FilterLongerThanBlock: return "FilterLongerThanBlock";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::BlockTooSmall: return "BlockTooSmall";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::MultichannelUnsupported: return "MultichannelUnsupported";
    case ErrorCode::FileError: return "FileError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace stqft
