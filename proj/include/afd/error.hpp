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

#ifndef AFD_ERROR_HPP_
#define AFD_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace afd {

// Every failure raised by the library carries one of these codes so callers
// (and tests) can dispatch on the kind of error rather than on message text.
enum class ErrorCode {
  // flow_io
  BadMagic,
  TruncatedPayload,
  TrailingBytes,
  NonPositiveDims,
  OversizeDims,
  UnknownFlowPresent,
  // shared
  DimensionMismatch,
  NonFiniteFlow,
  ZeroDimension,
  // flow_estimate
  DegenerateInput,
  InvalidParams,
  // audit
  FrameTooSmall,
  EmptyClip,
  // subset
  SubsetTooSmall,
  NotEnoughEligibleClasses,
  InvalidMatrix,
  // pipeline / io
  IoError,
  BadImage,
  InvalidJob,
  DuplicateClipId,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace afd

#endif  // AFD_ERROR_HPP_
