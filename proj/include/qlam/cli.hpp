// Copyright 2026 The qlam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qlam/superposition.hpp"
#include "qlam/unitaries.hpp"

namespace qlam::cli {

enum ExitCode : int { kOk = 0, kTypeError = 1, kParseError = 2, kLimit = 3, kUsage = 4 };

/// `qlam <args...>`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Human-readable normal form: product states are printed factor by
/// factor, amplitudes with 10 significant digits.
std::string display(const Superposition& s);

/// Multiplies by the phase that makes the first amplitude real positive.
Superposition fix_phase(const Superposition& s);

/// Runs every `.qlam` file of `dir` against its `-- EXPECT:` lines.
int run_corpus(const std::filesystem::path& dir, const GateRegistry& gates, bool phase, std::ostream& out,
               std::ostream& err);

}  // namespace qlam::cli
