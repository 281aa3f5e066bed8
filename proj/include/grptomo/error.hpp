// Copyright 2026 The grptomo Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace grptomo {

enum class ErrorCode {
  NotInvertible,
  NotPrime,
  NotOddPrime,
  ZeroArgument,
  NotComposable,
  DimensionMismatch,
  LengthMismatch,
  TooLarge,
  Unsupported,
  NoUniqueFixedPoint,
  NotSquare,
  IllConditioned,
  IncompleteFamily,
  UnbiasednessFailed,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotOddPrime: return "NotOddPrime";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NoUniqueFixedPoint: return "NoUniqueFixedPoint";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::IncompleteFamily: return "IncompleteFamily";
    case ErrorCode::UnbiasednessFailed: return "UnbiasednessFailed";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace grptomo
