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

#include "goptier/error.hpp"

namespace goptier {

std::string_view ErrorCodeName(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedCatalog: return "MalformedCatalog";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kEmptyRepository: return "EmptyRepository";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kClusterCountMismatch: return "ClusterCountMismatch";
    case ErrorCode::kEmptyCluster: return "EmptyCluster";
    case ErrorCode::kNegativeSize: return "NegativeSize";
    case ErrorCode::kInconsistentSelection: return "InconsistentSelection";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kEmptyResult: return "EmptyResult";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kPartialFailure: return "PartialFailure";
  }
  return "Unknown";
}

}  // namespace goptier
