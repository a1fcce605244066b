/*
 * Copyright 2026 The Growing Spheres Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GROWING_SPHERES_ERROR_HPP_
#define GROWING_SPHERES_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gs {

enum class ErrorCode {
  kDimensionMismatch,
  kNonFinite,
  kInvalidDimension,
  kInvalidTarget,
  kInvalidHyperparameters,
  kInvalidLayer,
  kInvalidArgument,
  kEmptyDataset,
  kEmptyInput,
  kNoEnemyFound,
  kNotAnEnemy,
  kClassifierFailure,
  kProtocolViolation,
  kProcessDead,
  kTimeout,
  kIo,
};

inline constexpr std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kInvalidDimension: return "InvalidDimension";
    case ErrorCode::kInvalidTarget: return "InvalidTarget";
    case ErrorCode::kInvalidHyperparameters: return "InvalidHyperparameters";
    case ErrorCode::kInvalidLayer: return "InvalidLayer";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNoEnemyFound: return "NoEnemyFound";
    case ErrorCode::kNotAnEnemy: return "NotAnEnemy";
    case ErrorCode::kClassifierFailure: return "ClassifierFailure";
    case ErrorCode::kProtocolViolation: return "ProtocolViolation";
    case ErrorCode::kProcessDead: return "ProcessDead";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

// Every failure raised by the library. The code is the stable part; the
// message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Protocol, process and timeout errors are all failures of the black box.
  bool is_classifier_failure() const noexcept {
    return code_ == ErrorCode::kClassifierFailure ||
           code_ == ErrorCode::kProtocolViolation ||
           code_ == ErrorCode::kProcessDead || code_ == ErrorCode::kTimeout;
  }

 private:
  ErrorCode code_;
};

}  // namespace gs

#endif  // GROWING_SPHERES_ERROR_HPP_
