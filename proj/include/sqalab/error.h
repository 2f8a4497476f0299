// include/sqalab/error.h

// Copyright 2026 The sqa-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SQALAB_ERROR_H_
#define SQALAB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqalab {

enum class ErrorCode {
  kParse,         // malformed input text or binary
  kRange,         // value outside its domain (score, n, trims)
  kIo,            // file could not be opened / written
  kPrecondition,  // operation called outside its contract
  kDimension,     // shape mismatch between features and model
  kUsage,         // bad command line
};

/// Machine-parsable name used as the prefix of CLI error lines.
std::string_view ErrorCodeName(ErrorCode code);

/// All library failures are reported with this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sqalab

#endif  // SQALAB_ERROR_H_
