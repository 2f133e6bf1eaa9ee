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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qlam/syntax.hpp"

namespace qlam {

/// Syntax error with 1-based position and the set of tokens that would have
/// been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, std::vector<std::string> expected, std::string found);

    int line() const { return line_; }
    int column() const { return column_; }
    const std::vector<std::string>& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    int line_;
    int column_;
    std::vector<std::string> expected_;
    std::string found_;
};

TermPtr parse_term(std::string_view text);
TypePtr parse_type(std::string_view text);
Complex parse_scalar(std::string_view text);

/// `gate NAME = [[...], ...];`
struct GateDecl {
    std::string name;
    std::vector<std::vector<Complex>> rows;
    SourceLoc loc;
};

/// `def name = term;`
struct Definition {
    std::string name;
    TermPtr body;
    SourceLoc loc;
};

/// Contents of a `.qlam` source: declarations followed by at most one term.
struct Program {
    std::vector<GateDecl> gates;
    std::vector<Definition> defs;
    TermPtr main;  // null when the source holds declarations only
};

Program parse_program(std::string_view text);

/// Inlines `defs` into `t`, later definitions seeing earlier ones. These are
/// macros: each use receives its own copy.
TermPtr expand_definitions(const TermPtr& t, const std::vector<Definition>& defs);

}  // namespace qlam
