// src/cli/commands.h

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

#ifndef SQALAB_CLI_COMMANDS_H_
#define SQALAB_CLI_COMMANDS_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace sqalab {

/// Runs one `sqa-lab` invocation. `args` excludes the program name. Returns
/// 0 on success; on failure writes a single `error_code: message` line to
/// `err` and returns 1 (2 for command-line errors).
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

/// Parallelism cap from SQA_LAB_THREADS (default: hardware concurrency).
std::size_t ThreadLimitFromEnv();

}  // namespace sqalab

#endif  // SQALAB_CLI_COMMANDS_H_
