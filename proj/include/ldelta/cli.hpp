// Copyright 2026 The ldelta Authors.
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

#ifndef LDELTA_CLI_HPP_
#define LDELTA_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ldelta::cli {

  enum ExitCode : int {
    kOk          = 0,
    kInput       = 1,
    kResource    = 2,
    kConsistency = 3,
  };

  //! Runs one subcommand. `args` excludes the program name. Reports go to
  //! `out`, diagnostics and usage text to `err`.
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace ldelta::cli

#endif  // LDELTA_CLI_HPP_
