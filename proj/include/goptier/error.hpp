// Copyright 2026 The goptier Authors. All Rights Reserved.
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

#ifndef GOPTIER_ERROR_HPP_
#define GOPTIER_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace goptier {

// Every failure raised by the library carries one of these codes. The values
// are mirrored one-to-one by gt_status in the C API (offset by one, since
// GT_OK occupies zero there).
enum class ErrorCode {
  kInvalidArgument = 1,
  kMalformedCatalog,
  kInvalidSpec,
  kEmptyRepository,
  kEmptyInput,
  kBadK,
  kClusterCountMismatch,
  kEmptyCluster,
  kNegativeSize,
  kInconsistentSelection,
  kDivisionByZero,
  kEmptyResult,
  kParse,
  kIo,
  kPartialFailure,
};

std::string_view ErrorCodeName(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace goptier

#endif  // GOPTIER_ERROR_HPP_
