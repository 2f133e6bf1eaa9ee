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

#include "qlam/evaluator.hpp"

#include <utility>

#include "overloaded.hpp"
#include "qlam/printer.hpp"

namespace qlam {

using detail::overloaded;

EvalError::EvalError(Kind kind, std::size_t steps, const std::string& message)
    : std::runtime_error(message), kind_(kind), steps_(steps) {}

const char* to_string(EvalError::Kind k) {
    switch (k) {
        case EvalError::Kind::Stuck:
            return "Stuck";
        case EvalError::Kind::FuelExhausted:
            return "FuelExhausted";
    }
    return "EvalError";
}

bool is_value(const TermPtr& t) {
    if (t->is<node::Hole>() || t->is<node::Qubit>() || t->is<node::Lam>() || t->is<node::Gate>()) return true;
    if (const auto* p = t->as<node::Pair>()) return is_value(p->left) && is_value(p->right);
    return false;
}

namespace {

bool is_literal(const TermPtr& t) { return t->is<node::Hole>() || t->is<node::Qubit>(); }

/// Leaf count of a tuple of literals, 0 if `t` is not one.
std::size_t literal_tuple_width(const TermPtr& t) {
    if (is_literal(t)) return 1;
    if (const auto* p = t->as<node::Pair>()) {
        std::size_t l = literal_tuple_width(p->left);
        std::size_t r = literal_tuple_width(p->right);
        return (l == 0 || r == 0) ? 0 : l + r;
    }
    return 0;
}

bool pattern_fits(const Pattern& p, const TermPtr& v) {
    if (p.is_var()) return true;
    const auto* pair = v->as<node::Pair>();
    return pair != nullptr && pattern_fits(*p.left, pair->left) && pattern_fits(*p.right, pair->right);
}

void match(const Pattern& p, const TermPtr& v, Bindings& out) {
    if (p.is_var()) {
        out[p.name] = v;
        return;
    }
    const auto& pair = *v->as<node::Pair>();
    match(*p.left, pair.left, out);
    match(*p.right, pair.right, out);
}

std::optional<Redex::Kind> redex_kind(const TermPtr& t) {
    const auto* app = t->as<node::App>();
    if (app == nullptr) return std::nullopt;
    if (const auto* lam = app->fun->as<node::Lam>()) {
        if (is_value(app->arg) && pattern_fits(*lam->pattern, app->arg)) return Redex::Kind::Beta;
        return std::nullopt;
    }
    if (app->fun->is<node::Gate>() && literal_tuple_width(app->arg) != 0) return Redex::Kind::Unitary;
    return std::nullopt;
}

bool search(const TermPtr& t, Strategy strategy, RedexPosition& path, Redex::Kind& kind) {
    auto self = [&] {
        if (auto k = redex_kind(t)) {
            kind = *k;
            return true;
        }
        return false;
    };
    auto child = [&](std::size_t i, const TermPtr& c) {
        path.push_back(i);
        if (search(c, strategy, path, kind)) return true;
        path.pop_back();
        return false;
    };
    const bool right_first = strategy == Strategy::RightmostInnermost;
    auto two = [&](const TermPtr& l, const TermPtr& r) {
        return right_first ? child(1, r) || child(0, l) : child(0, l) || child(1, r);
    };
    auto children = [&] {
        if (const auto* a = t->as<node::App>()) return two(a->fun, a->arg);
        if (const auto* p = t->as<node::Pair>()) return two(p->left, p->right);
        return false;
    };
    if (strategy == Strategy::LeftmostOutermost) return self() || children();
    return children() || self();
}

const TermPtr& at_path(const TermPtr& t, const RedexPosition& path, std::size_t depth = 0) {
    if (depth == path.size()) return t;
    if (const auto* a = t->as<node::App>()) return at_path(path[depth] == 0 ? a->fun : a->arg, path, depth + 1);
    const auto& p = *t->as<node::Pair>();
    return at_path(path[depth] == 0 ? p.left : p.right, path, depth + 1);
}

TermPtr replace_at(const TermPtr& t, const RedexPosition& path, std::size_t depth, const TermPtr& with) {
    if (depth == path.size()) return with;
    if (const auto* a = t->as<node::App>()) {
        if (path[depth] == 0) return make_app(replace_at(a->fun, path, depth + 1, with), a->arg, t->loc);
        return make_app(a->fun, replace_at(a->arg, path, depth + 1, with), t->loc);
    }
    const auto& p = *t->as<node::Pair>();
    if (path[depth] == 0) return make_pair(replace_at(p.left, path, depth + 1, with), p.right, t->loc);
    return make_pair(p.left, replace_at(p.right, path, depth + 1, with), t->loc);
}

}  // namespace

std::optional<Redex> find_redex(const TermPtr& skeleton, Strategy strategy) {
    RedexPosition path;
    Redex::Kind kind{};
    if (!search(skeleton, strategy, path, kind)) return std::nullopt;
    return Redex{kind, std::move(path)};
}

std::optional<Superposition> step(const Superposition& s, const GateRegistry& gates, Strategy strategy) {
    if (s.empty()) return std::nullopt;
    auto redex = find_redex(s.skeleton().term, strategy);
    if (!redex) return std::nullopt;

    SuperpositionBuilder out;
    for (const auto& [key, entry] : s.entries()) {
        const TermPtr& sub = at_path(entry.term, redex->path);
        const auto& app = *sub->as<node::App>();
        if (redex->kind == Redex::Kind::Beta) {
            const auto& lam = *app.fun->as<node::Lam>();
            Bindings b;
            match(*lam.pattern, app.arg, b);
            TermPtr next = replace_at(entry.term, redex->path, 0, subst(lam.body, b));
            out.add(linearize(next), entry.amplitude);
            continue;
        }
        const std::string& name = app.fun->as<node::Gate>()->name;
        const GateDef* g = gates.find(name);
        if (g == nullptr) throw EvalError(EvalError::Kind::Stuck, 0, "unknown gate #" + name);
        std::vector<int> bits = literal_bits(app.arg);
        if (bits.size() != g->arity)
            throw EvalError(EvalError::Kind::Stuck, 0, "gate #" + name + " applied to wrong number of qubits");
        Superposition outputs = apply_gate(*g, bits);
        for (const auto& [okey, o] : outputs.entries())
            out.add(replace_at(entry.term, redex->path, 0, o.term), entry.amplitude * o.amplitude);
    }
    return out.build();
}

Superposition eval(const Superposition& s, const GateRegistry& gates, const EvalOptions& options) {
    Superposition cur = s;
    if (options.trace) options.trace(0, cur);
    for (std::size_t n = 0;; ++n) {
        if (!cur.empty() && n == options.fuel && find_redex(cur.skeleton().term, options.strategy))
            throw EvalError(EvalError::Kind::FuelExhausted, n,
                            "fuel exhausted after " + std::to_string(n) + " steps");
        auto next = step(cur, gates, options.strategy);
        if (!next) {
            if (!cur.empty() && !is_value(cur.skeleton().term))
                throw EvalError(EvalError::Kind::Stuck, n, "stuck at " + cur.skeleton().text());
            return cur;
        }
        cur = std::move(*next);
        if (options.trace) options.trace(n + 1, cur);
    }
}

TermPtr eta_contract(const TermPtr& t) {
    return std::visit(
        overloaded{
            [&](const node::Lam& l) -> TermPtr {
                TermPtr body = eta_contract(l.body);
                if (l.pattern->is_var()) {
                    if (const auto* a = body->as<node::App>()) {
                        const auto* x = a->arg->as<node::Var>();
                        if (x != nullptr && x->name == l.pattern->name && free_vars(a->fun).count(x->name) == 0)
                            return a->fun;
                    }
                }
                return make_lam(l.pattern, l.annot, body, t->loc);
            },
            [&](const node::App& a) -> TermPtr {
                TermPtr f = eta_contract(a.fun);
                return make_app(f, eta_contract(a.arg), t->loc);
            },
            [&](const node::Pair& p) -> TermPtr {
                TermPtr l = eta_contract(p.left);
                return make_pair(l, eta_contract(p.right), t->loc);
            },
            [&](const node::Sum& s) -> TermPtr {
                TermPtr l = eta_contract(s.left);
                return make_sum(l, eta_contract(s.right), t->loc);
            },
            [&](const node::Scale& s) -> TermPtr { return make_scale(s.coeff, eta_contract(s.body), t->loc); },
            [&](const auto&) -> TermPtr { return t; },
        },
        t->node);
}

Superposition eta_normal(const Superposition& s) {
    SuperpositionBuilder b;
    for (const auto& [key, e] : s.entries()) b.add(eta_contract(e.term), e.amplitude);
    return b.build();
}

bool equiv(const Superposition& a, const Superposition& b, const GateRegistry& gates, const EvalOptions& options,
           CompareMode mode) {
    Superposition na = eta_normal(eval(a, gates, options));
    Superposition nb = eta_normal(eval(b, gates, options));
    return super_eq(na, nb, mode, kNormTolerance);
}

}  // namespace qlam
