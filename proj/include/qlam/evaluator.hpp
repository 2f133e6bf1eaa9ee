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

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qlam/superposition.hpp"
#include "qlam/unitaries.hpp"

namespace qlam {

inline constexpr std::size_t kDefaultFuel = 100000;

/// With the value restriction on beta, redexes never nest, so the two
/// leftmost orders coincide; RightmostInnermost contracts in the opposite
/// order and is the informative comparison.
enum class Strategy { LeftmostOutermost, LeftmostInnermost, RightmostInnermost };

/// Child indices from the root: App is fun 0 / arg 1, Pair is left 0 /
/// right 1. Evaluation never enters a Lam, so paths never pass through one.
using RedexPosition = std::vector<std::size_t>;

struct Redex {
    enum class Kind { Beta, Unitary };
    Kind kind;
    RedexPosition path;
};

/// Locates the redex chosen by `strategy` in a skeleton (holes stand for
/// literals). Shapes only, so the answer holds for every branch.
std::optional<Redex> find_redex(const TermPtr& skeleton, Strategy strategy = Strategy::LeftmostOutermost);

/// Literal, hole, abstraction, gate, or tensor of values.
bool is_value(const TermPtr& t);

class EvalError : public std::runtime_error {
public:
    enum class Kind { Stuck, FuelExhausted };
    EvalError(Kind kind, std::size_t steps, const std::string& message);
    Kind kind() const { return kind_; }
    std::size_t steps() const { return steps_; }

private:
    Kind kind_;
    std::size_t steps_;
};

const char* to_string(EvalError::Kind k);

/// Contracts one redex in every branch; nullopt when `s` is in normal form.
std::optional<Superposition> step(const Superposition& s, const GateRegistry& gates,
                                  Strategy strategy = Strategy::LeftmostOutermost);

struct EvalOptions {
    std::size_t fuel = kDefaultFuel;
    Strategy strategy = Strategy::LeftmostOutermost;
    /// Called with the step count and the state, starting at 0 with the input.
    std::function<void(std::size_t, const Superposition&)> trace;
};

/// Iterates `step`. Throws FuelExhausted when a redex remains after
/// `fuel` steps and Stuck when the normal form is not a value.
Superposition eval(const Superposition& s, const GateRegistry& gates, const EvalOptions& options = {});

/// Rewrites `\x:A. f x` to `f` (x not free in f) everywhere, innermost first.
TermPtr eta_contract(const TermPtr& t);

/// Superposition with every branch eta-contracted.
Superposition eta_normal(const Superposition& s);

/// Normal forms compared at kNormTolerance after eta contraction.
bool equiv(const Superposition& a, const Superposition& b, const GateRegistry& gates,
           const EvalOptions& options = {}, CompareMode mode = CompareMode::Strict);

}  // namespace qlam
