// Copyright 2026 The ReVOS Toolkit Authors.
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

#include "revos/error.h"

namespace revos {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnreadable: return "Unreadable";
    case ErrorCode::kBitDepth: return "BitDepth";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kAnnotationMismatch: return "AnnotationMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kMisaligned: return "Misaligned";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace revos
