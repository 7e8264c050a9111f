// Copyright 2026 The AFD Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "afd/error.hpp"

namespace afd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedPayload: return "TruncatedPayload";
    case ErrorCode::TrailingBytes: return "TrailingBytes";
    case ErrorCode::NonPositiveDims: return "NonPositiveDims";
    case ErrorCode::OversizeDims: return "OversizeDims";
    case ErrorCode::UnknownFlowPresent: return "UnknownFlowPresent";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteFlow: return "NonFiniteFlow";
    case ErrorCode::ZeroDimension: return "ZeroDimension";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::FrameTooSmall: return "FrameTooSmall";
    case ErrorCode::EmptyClip: return "EmptyClip";
    case ErrorCode::SubsetTooSmall: return "SubsetTooSmall";
    case ErrorCode::NotEnoughEligibleClasses: return "NotEnoughEligibleClasses";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::BadImage: return "BadImage";
    case ErrorCode::InvalidJob: return "InvalidJob";
    case ErrorCode::DuplicateClipId: return "DuplicateClipId";
  }
  return "Unknown";
}

}  // namespace afd
