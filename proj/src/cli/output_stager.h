// src/cli/output_stager.h

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

#ifndef SQALAB_CLI_OUTPUT_STAGER_H_
#define SQALAB_CLI_OUTPUT_STAGER_H_

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace sqalab {

/// Writes every output of a command to a temporary file in the output
/// directory and renames them into place only on Commit(). Uncommitted
/// temporaries are removed on destruction, so a failed command leaves no
/// partial outputs behind.
class OutputStager {
 public:
  explicit OutputStager(std::filesystem::path out_dir);
  ~OutputStager();

  OutputStager(const OutputStager &) = delete;
  OutputStager &operator=(const OutputStager &) = delete;

  std::ostream &Open(const std::string &file_name);
  void Commit();

  const std::vector<std::filesystem::path> &final_paths() const {
    return finals_;
  }

 private:
  std::filesystem::path out_dir_;
  std::vector<std::filesystem::path> temps_;
  std::vector<std::filesystem::path> finals_;
  std::vector<std::unique_ptr<std::ofstream>> streams_;
  bool committed_ = false;
};

}  // namespace sqalab

#endif  // SQALAB_CLI_OUTPUT_STAGER_H_
