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

#include <string>

#include "qlam/syntax.hpp"

namespace qlam {

/// Minimal-parenthesis rendering that parses back to an alpha-equal term.
std::string pretty(const TermPtr& t);
std::string pretty(const TypePtr& t);
std::string pretty(const PatternPtr& p);

/// Shortest decimal form that reads back to the same doubles, e.g. `0.5`,
/// `-0.25i`, `0.5+0.5i`. Used inside `(c) * t`.
std::string format_scalar(Complex c);

/// Display form with 10 significant digits; magnitudes below 1e-12 print
/// as 0.
std::string format_amplitude(Complex c);

}  // namespace qlam
