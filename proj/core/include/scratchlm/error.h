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

#ifndef SCRATCHLM_ERROR_H_
#define SCRATCHLM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scratchlm {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kMalformedArchive,
  kMalformedProgram,
  kMalformedStreamFile,
  kMalformedManifest,
  kUnknownToken,
  kEmptyCorpus,
  kOrderMismatch,
  kFormatVersionMismatch,
  kCorruptModel,
  kEmptyRecords,
  kDegenerateSample,
  kZeroTotal,
  kOverlappingPartitions,
  kNotFound,
  kRateLimited,
  kNetworkError,
};

// Stable machine-readable name, e.g. "MalformedArchive".
std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error; the code is what callers
// (and the CLI's error records) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scratchlm

#endif  // SCRATCHLM_ERROR_H_
