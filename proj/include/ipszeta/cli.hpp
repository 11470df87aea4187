// Copyright 2026 The ipszeta Authors
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


#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ipszeta {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitRuntimeError = 1,
    kExitInvalidInput = 2,
    kExitVerificationFailed = 3,
};

/// Runs the command-line tool. `args` excludes the program name. The result is
/// written once, to `out` or to the --out file; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ipszeta
