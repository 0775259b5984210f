// Copyright 2026 The ScratchLM Authors.
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

#include "scratchlm/error.h"

namespace scratchlm {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kMalformedArchive: return "MalformedArchive";
    case ErrorCode::kMalformedProgram: return "MalformedProgram";
    case ErrorCode::kMalformedStreamFile: return "MalformedStreamFile";
    case ErrorCode::kMalformedManifest: return "MalformedManifest";
    case ErrorCode::kUnknownToken: return "UnknownToken";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kFormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::kCorruptModel: return "CorruptModel";
    case ErrorCode::kEmptyRecords: return "EmptyRecords";
    case ErrorCode::kDegenerateSample: return "DegenerateSample";
    case ErrorCode::kZeroTotal: return "ZeroTotal";
    case ErrorCode::kOverlappingPartitions: return "OverlappingPartitions";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kNetworkError: return "NetworkError";
  }
  return "Unknown";
}

}  // namespace scratchlm
