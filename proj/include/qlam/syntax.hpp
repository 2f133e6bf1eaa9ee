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

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace qlam {

using Complex = std::complex<double>;

/// 1-based line/column of the first character of a syntax node. A zero line
/// marks a node synthesised by a rewrite rather than read from source.
struct SourceLoc {
    int line = 0;
    int column = 0;
};

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class TypeKind { Qbit, Lolli, Tensor };

struct Type;
using TypePtr = std::shared_ptr<const Type>;

/// Type syntax tree. For `Lolli`, `left` is the domain and `right` the
/// codomain; for `Tensor` they are the two factors.
struct Type {
    TypeKind kind = TypeKind::Qbit;
    TypePtr left;
    TypePtr right;

    bool is_qbit() const { return kind == TypeKind::Qbit; }
    bool is_lolli() const { return kind == TypeKind::Lolli; }
    bool is_tensor() const { return kind == TypeKind::Tensor; }
    const TypePtr& domain() const { return left; }
    const TypePtr& codomain() const { return right; }
};

TypePtr qbit_type();
TypePtr lolli_type(TypePtr domain, TypePtr codomain);
TypePtr tensor_type(TypePtr left, TypePtr right);

/// Left-nested tensor of `n` Qbit leaves, the same bracketing the parser
/// gives `Qbit (x) Qbit (x) Qbit`. Requires n >= 1.
TypePtr qbit_power(std::size_t n);

/// Number of leaves if `t` is a tensor tree built only from Qbit, else 0.
std::size_t qbit_count(const Type& t);

bool type_equal(const Type& a, const Type& b);
inline bool type_equal(const TypePtr& a, const TypePtr& b) { return type_equal(*a, *b); }

/// True when the type contains no `-o`.
bool is_first_order(const Type& t);

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

struct Pattern;
using PatternPtr = std::shared_ptr<const Pattern>;

/// A variable (`left == nullptr`) or a tensor pair of sub-patterns.
struct Pattern {
    std::string name;
    PatternPtr left;
    PatternPtr right;
    SourceLoc loc;

    bool is_var() const { return left == nullptr; }
};

PatternPtr var_pattern(std::string name, SourceLoc loc = {});
PatternPtr pair_pattern(PatternPtr left, PatternPtr right, SourceLoc loc = {});

/// Variables of a pattern in left-to-right order.
std::vector<std::string> pattern_vars(const Pattern& p);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

namespace node {
struct Var {
    std::string name;
};
struct Lam {
    PatternPtr pattern;
    TypePtr annot;
    TermPtr body;
};
struct App {
    TermPtr fun;
    TermPtr arg;
};
struct Pair {
    TermPtr left;
    TermPtr right;
};
struct Qubit {
    int bit = 0;
};
struct Gate {
    std::string name;
};
struct Sum {
    TermPtr left;
    TermPtr right;
};
struct Scale {
    Complex coeff;
    TermPtr body;
};
/// Placeholder for an erased qubit literal; only skeletons contain holes.
struct Hole {};
}  // namespace node

struct Term {
    using Node = std::variant<node::Var, node::Lam, node::App, node::Pair, node::Qubit,
                              node::Gate, node::Sum, node::Scale, node::Hole>;
    Node node;
    SourceLoc loc;

    template <class T>
    const T* as() const {
        return std::get_if<T>(&node);
    }
    template <class T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
};

TermPtr make_var(std::string name, SourceLoc loc = {});
TermPtr make_lam(PatternPtr pattern, TypePtr annot, TermPtr body, SourceLoc loc = {});
TermPtr make_app(TermPtr fun, TermPtr arg, SourceLoc loc = {});
TermPtr make_pair(TermPtr left, TermPtr right, SourceLoc loc = {});
TermPtr make_qubit(int bit, SourceLoc loc = {});
TermPtr make_gate(std::string name, SourceLoc loc = {});
TermPtr make_sum(TermPtr left, TermPtr right, SourceLoc loc = {});
TermPtr make_scale(Complex coeff, TermPtr body, SourceLoc loc = {});
TermPtr make_hole(SourceLoc loc = {});

/// Left-nested tensor of the given terms (at least one).
TermPtr make_tensor(const std::vector<TermPtr>& items);

std::set<std::string> free_vars(const TermPtr& t);

/// Node count.
std::size_t term_size(const TermPtr& t);

/// True when the term contains no Sum and no Scale node.
bool is_basis(const TermPtr& t);

/// Exact tree equality, bound names included; scalars compared with ==.
bool structurally_equal(const TermPtr& a, const TermPtr& b);

/// Renames every bound variable to a canonical name determined only by
/// binder position, so alpha-equivalent terms canonicalise identically.
TermPtr canonicalize(const TermPtr& t);

bool alpha_eq(const TermPtr& a, const TermPtr& b);

using Bindings = std::map<std::string, TermPtr>;

/// Simultaneous capture-avoiding substitution. Binders that would capture a
/// free variable of a substituted term are renamed by appending primes.
TermPtr subst(const TermPtr& body, const Bindings& bindings);

}  // namespace qlam
