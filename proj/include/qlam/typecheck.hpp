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
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlam/superposition.hpp"
#include "qlam/syntax.hpp"
#include "qlam/unitaries.hpp"

namespace qlam {

struct Binding {
    std::string name;
    TypePtr type;
};

/// Ordered linear typing context; names are pairwise distinct.
class Context {
public:
    Context() = default;
    explicit Context(std::vector<Binding> bindings);

    const std::vector<Binding>& bindings() const { return bindings_; }
    bool empty() const { return bindings_.empty(); }
    std::size_t size() const { return bindings_.size(); }
    const Binding* find(const std::string& name) const;

private:
    std::vector<Binding> bindings_;
};

class TypeError : public std::runtime_error {
public:
    enum class Kind {
        UnboundVar,
        DuplicateUse,
        UnusedVar,
        Mismatch,
        NonCongruent,
        NonNormalized,
        NotAFunction,
        GateArity,
    };

    static TypeError unbound(const std::string& name, SourceLoc loc);
    static TypeError duplicate(const std::string& name, SourceLoc loc);
    static TypeError unused(const std::string& name, SourceLoc loc);
    static TypeError mismatch(TypePtr expected, TypePtr found, SourceLoc loc);
    static TypeError pattern_mismatch(const PatternPtr& p, TypePtr annot, SourceLoc loc);
    static TypeError non_congruent(const std::string& detail, SourceLoc loc);
    static TypeError non_normalized(double norm2, SourceLoc loc);
    static TypeError not_a_function(TypePtr found, SourceLoc loc);
    static TypeError gate_arity(const std::string& gate, std::size_t expected, std::size_t found,
                                SourceLoc loc);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const TypePtr& expected() const { return expected_; }
    const TypePtr& found() const { return found_; }
    double norm2() const { return norm2_; }
    std::size_t expected_arity() const { return expected_arity_; }
    std::size_t found_arity() const { return found_arity_; }
    SourceLoc loc() const { return loc_; }

private:
    TypeError(Kind kind, SourceLoc loc, std::string message);

    Kind kind_;
    SourceLoc loc_;
    std::string name_;
    TypePtr expected_;
    TypePtr found_;
    double norm2_ = 0.0;
    std::size_t expected_arity_ = 0;
    std::size_t found_arity_ = 0;
};

const char* to_string(TypeError::Kind k);

// ---------------------------------------------------------------------------
// Derivations
// ---------------------------------------------------------------------------

enum class Rule {
    Id,
    Exch,
    Cut,
    LolliIntro,
    LolliElim,
    TensorIntro,
    TensorElim,
    QbitIntro,
    GateIntro,
};

const char* to_string(Rule r);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

/// One rule application concluding `context |- term : type`.
///
/// Premise shapes:
///  - Id: none; context is the single bound variable.
///  - Exch: one premise whose context is `context` reordered so that
///    premise.context[i] == context[permutation[i]].
///  - Cut: [QbitIntro over k qubits, derivation of h1..hk, context |- S : type];
///    the holes h1..hk of skeleton S take the literal values of the branches.
///  - LolliIntro: one premise with context `context ++ [p : domain]`.
///  - LolliElim: [fun, arg]; context is fun.context ++ arg.context. This is
///    the natural-deduction elimination, i.e. apply composed with both
///    premises.
///  - TensorIntro: [left, right]; context is left.context ++ right.context.
///  - TensorElim: one premise in which binding `split_at` (a pair pattern)
///    is replaced by its two halves.
///  - QbitIntro: none; `amplitudes` has 2^qubits entries. qubits == 0 gives
///    a scalar (type is then null: the unit object).
///  - GateIntro: none; `gate` names the constant.
struct Derivation {
    Rule rule = Rule::Id;
    std::vector<Binding> context;
    TypePtr type;
    std::vector<DerivationPtr> premises;
    std::vector<std::size_t> permutation;
    std::size_t split_at = 0;
    std::vector<Complex> amplitudes;
    std::size_t qubits = 0;
    std::string gate;
};

/// Derives `ctx |- s : A`. Branches are checked through their shared
/// skeleton; a closed superposition must have norm2 == 1 within
/// kNormTolerance.
DerivationPtr derive(const Context& ctx, const Superposition& s, const GateRegistry& gates);

TypePtr infer(const Context& ctx, const Superposition& s, const GateRegistry& gates);

/// Throws Mismatch when the inferred type differs from `expected`.
void check(const Context& ctx, const Superposition& s, const TypePtr& expected,
           const GateRegistry& gates);

/// linearize + infer; a CongruenceError is reported as NonCongruent.
TypePtr infer_term(const Context& ctx, const TermPtr& t, const GateRegistry& gates);

/// Multi-line rendering of a derivation, one rule per line.
std::string render(const Derivation& d);

}  // namespace qlam
