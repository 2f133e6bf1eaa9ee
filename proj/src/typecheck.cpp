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

#include "qlam/typecheck.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "overloaded.hpp"
#include "qlam/printer.hpp"

namespace qlam {

using detail::overloaded;

Context::Context(std::vector<Binding> bindings) : bindings_(std::move(bindings)) {
    std::set<std::string> seen;
    for (const auto& b : bindings_) {
        if (!seen.insert(b.name).second)
            throw std::invalid_argument("context binds '" + b.name + "' more than once");
    }
}

const Binding* Context::find(const std::string& name) const {
    for (const auto& b : bindings_)
        if (b.name == name) return &b;
    return nullptr;
}

namespace {

std::string at(SourceLoc loc) {
    if (loc.line == 0) return "";
    return "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": ";
}

}  // namespace

TypeError::TypeError(Kind kind, SourceLoc loc, std::string message)
    : std::runtime_error(at(loc) + message), kind_(kind), loc_(loc) {}

TypeError TypeError::unbound(const std::string& name, SourceLoc loc) {
    TypeError e(Kind::UnboundVar, loc, "unbound name '" + name + "'");
    e.name_ = name;
    return e;
}

TypeError TypeError::duplicate(const std::string& name, SourceLoc loc) {
    TypeError e(Kind::DuplicateUse, loc, "linear variable '" + name + "' is used more than once");
    e.name_ = name;
    return e;
}

TypeError TypeError::unused(const std::string& name, SourceLoc loc) {
    TypeError e(Kind::UnusedVar, loc, "linear variable '" + name + "' is never used");
    e.name_ = name;
    return e;
}

TypeError TypeError::mismatch(TypePtr expected, TypePtr found, SourceLoc loc) {
    TypeError e(Kind::Mismatch, loc,
                "expected type '" + pretty(expected) + "', found '" + pretty(found) + "'");
    e.expected_ = std::move(expected);
    e.found_ = std::move(found);
    return e;
}

TypeError TypeError::pattern_mismatch(const PatternPtr& p, TypePtr annot, SourceLoc loc) {
    TypeError e(Kind::Mismatch, loc,
                "pattern '" + pretty(p) + "' does not match type '" + pretty(annot) + "'");
    e.expected_ = std::move(annot);
    return e;
}

TypeError TypeError::non_congruent(const std::string& detail, SourceLoc loc) {
    return TypeError(Kind::NonCongruent, loc, detail);
}

TypeError TypeError::non_normalized(double norm2, SourceLoc loc) {
    std::ostringstream os;
    os << "closed superposition is not normalized: sum of |amplitude|^2 = " << norm2;
    TypeError e(Kind::NonNormalized, loc, os.str());
    e.norm2_ = norm2;
    return e;
}

TypeError TypeError::not_a_function(TypePtr found, SourceLoc loc) {
    TypeError e(Kind::NotAFunction, loc, "applied term has non-function type '" + pretty(found) + "'");
    e.found_ = std::move(found);
    return e;
}

TypeError TypeError::gate_arity(const std::string& gate, std::size_t expected, std::size_t found,
                                SourceLoc loc) {
    std::ostringstream os;
    os << "gate #" << gate << " acts on " << expected << " qubit(s) but is applied to " << found;
    TypeError e(Kind::GateArity, loc, os.str());
    e.name_ = gate;
    e.expected_arity_ = expected;
    e.found_arity_ = found;
    return e;
}

const char* to_string(TypeError::Kind k) {
    switch (k) {
        case TypeError::Kind::UnboundVar:
            return "UnboundVar";
        case TypeError::Kind::DuplicateUse:
            return "DuplicateUse";
        case TypeError::Kind::UnusedVar:
            return "UnusedVar";
        case TypeError::Kind::Mismatch:
            return "Mismatch";
        case TypeError::Kind::NonCongruent:
            return "NonCongruent";
        case TypeError::Kind::NonNormalized:
            return "NonNormalized";
        case TypeError::Kind::NotAFunction:
            return "NotAFunction";
        case TypeError::Kind::GateArity:
            return "GateArity";
    }
    return "TypeError";
}

const char* to_string(Rule r) {
    switch (r) {
        case Rule::Id:
            return "Id";
        case Rule::Exch:
            return "Exch";
        case Rule::Cut:
            return "Cut";
        case Rule::LolliIntro:
            return "-o-I";
        case Rule::LolliElim:
            return "-o-E";
        case Rule::TensorIntro:
            return "(x)-I";
        case Rule::TensorElim:
            return "(x)-E";
        case Rule::QbitIntro:
            return "Qbit-I";
        case Rule::GateIntro:
            return "c_U-I";
    }
    return "?";
}

namespace {

/// Names of skeleton holes; not valid identifiers, so never captured.
std::string hole_name(std::size_t i) { return "%h" + std::to_string(i); }

TermPtr holes_to_vars(const TermPtr& t, std::size_t& counter) {
    return std::visit(
        overloaded{
            [&](const node::Hole&) -> TermPtr { return make_var(hole_name(counter++), t->loc); },
            [&](const node::Lam& l) -> TermPtr {
                return make_lam(l.pattern, l.annot, holes_to_vars(l.body, counter), t->loc);
            },
            [&](const node::App& a) -> TermPtr {
                TermPtr f = holes_to_vars(a.fun, counter);
                return make_app(f, holes_to_vars(a.arg, counter), t->loc);
            },
            [&](const node::Pair& p) -> TermPtr {
                TermPtr l = holes_to_vars(p.left, counter);
                return make_pair(l, holes_to_vars(p.right, counter), t->loc);
            },
            [&](const auto&) -> TermPtr { return t; },
        },
        t->node);
}

using Node = std::shared_ptr<Derivation>;

Node new_node(Rule rule, std::vector<Binding> context, TypePtr type) {
    auto d = std::make_shared<Derivation>();
    d->rule = rule;
    d->context = std::move(context);
    d->type = std::move(type);
    return d;
}

std::vector<std::string> names_of(const std::vector<Binding>& ctx) {
    std::vector<std::string> out;
    for (const auto& b : ctx) out.push_back(b.name);
    return out;
}

/// Exch node concluding `target` from `premise` (same bindings, other order),
/// or `premise` itself when the orders agree.
DerivationPtr reorder(const std::vector<Binding>& target, DerivationPtr premise) {
    auto names = names_of(premise->context);
    if (names == names_of(target)) return premise;
    std::vector<std::size_t> perm;
    for (const auto& name : names) {
        auto it = std::find_if(target.begin(), target.end(), [&](const Binding& b) { return b.name == name; });
        if (it == target.end()) throw std::logic_error("reorder: binding '" + name + "' missing");
        perm.push_back(static_cast<std::size_t>(it - target.begin()));
    }
    Node d = new_node(Rule::Exch, target, premise->type);
    d->permutation = std::move(perm);
    d->premises.push_back(std::move(premise));
    return d;
}

class Checker {
public:
    explicit Checker(const GateRegistry& gates) : gates_(gates) {}

    void push(const std::string& name, TypePtr type, SourceLoc loc) {
        scope_.push_back({name, std::move(type), used_.size(), loc});
        used_.push_back(false);
    }

    void pop_checked(std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) {
            const Entry& e = scope_.back();
            if (!used_[e.id]) throw TypeError::unused(e.name, e.loc);
            scope_.pop_back();
        }
    }

    /// Structural derivation whose context lists the free variables of `t`
    /// in order of occurrence.
    DerivationPtr derive(const TermPtr& t) {
        return std::visit(
            overloaded{
                [&](const node::Var& v) -> DerivationPtr {
                    Entry* e = lookup(v.name);
                    if (e == nullptr) throw TypeError::unbound(v.name, t->loc);
                    if (used_[e->id]) throw TypeError::duplicate(v.name, t->loc);
                    used_[e->id] = true;
                    return new_node(Rule::Id, {{v.name, e->type}}, e->type);
                },
                [&](const node::Qubit& q) -> DerivationPtr {
                    Node d = new_node(Rule::QbitIntro, {}, qbit_type());
                    d->qubits = 1;
                    d->amplitudes = q.bit ? std::vector<Complex>{0.0, 1.0} : std::vector<Complex>{1.0, 0.0};
                    return d;
                },
                [&](const node::Gate& g) -> DerivationPtr {
                    const GateDef* def = gates_.find(g.name);
                    if (def == nullptr) throw TypeError::unbound("#" + g.name, t->loc);
                    TypePtr q = qbit_power(def->arity);
                    Node d = new_node(Rule::GateIntro, {}, lolli_type(q, q));
                    d->gate = g.name;
                    return d;
                },
                [&](const node::Pair& p) -> DerivationPtr {
                    DerivationPtr l = derive(p.left);
                    DerivationPtr r = derive(p.right);
                    auto ctx = l->context;
                    ctx.insert(ctx.end(), r->context.begin(), r->context.end());
                    Node d = new_node(Rule::TensorIntro, std::move(ctx), tensor_type(l->type, r->type));
                    d->premises = {l, r};
                    return d;
                },
                [&](const node::App& a) -> DerivationPtr {
                    DerivationPtr f = derive(a.fun);
                    if (!f->type->is_lolli()) throw TypeError::not_a_function(f->type, a.fun->loc);
                    DerivationPtr x = derive(a.arg);
                    const TypePtr& dom = f->type->domain();
                    if (!type_equal(dom, x->type)) {
                        if (const auto* g = a.fun->as<node::Gate>()) {
                            std::size_t n = qbit_count(*dom);
                            std::size_t k = qbit_count(*x->type);
                            if (k != 0 && k != n) throw TypeError::gate_arity(g->name, n, k, a.arg->loc);
                        }
                        throw TypeError::mismatch(dom, x->type, a.arg->loc);
                    }
                    auto ctx = f->context;
                    ctx.insert(ctx.end(), x->context.begin(), x->context.end());
                    Node d = new_node(Rule::LolliElim, std::move(ctx), f->type->codomain());
                    d->premises = {f, x};
                    return d;
                },
                [&](const node::Lam& l) -> DerivationPtr { return derive_lambda(l, t->loc); },
                [&](const auto&) -> DerivationPtr {
                    throw std::logic_error("derive: term is not a hole-free basis term");
                },
            },
            t->node);
    }

private:
    struct Entry {
        std::string name;
        TypePtr type;
        std::size_t id;
        SourceLoc loc;
    };

    Entry* lookup(const std::string& name) {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->name == name) return &*it;
        return nullptr;
    }

    void flatten(const PatternPtr& p, const TypePtr& type, const PatternPtr& whole, const TypePtr& annot,
                 std::vector<std::pair<PatternPtr, TypePtr>>& out) {
        if (p->is_var()) {
            out.emplace_back(p, type);
            return;
        }
        if (!type->is_tensor()) throw TypeError::pattern_mismatch(whole, annot, p->loc);
        flatten(p->left, type->left, whole, annot, out);
        flatten(p->right, type->right, whole, annot, out);
    }

    DerivationPtr derive_lambda(const node::Lam& l, SourceLoc loc) {
        std::vector<std::pair<PatternPtr, TypePtr>> leaves;
        flatten(l.pattern, l.annot, l.pattern, l.annot, leaves);
        for (const auto& [p, ty] : leaves) push(p->name, ty, p->loc);
        DerivationPtr body = derive(l.body);
        pop_checked(leaves.size());

        std::set<std::string> bound;
        for (const auto& [p, ty] : leaves) bound.insert(p->name);
        std::vector<Binding> outer;
        for (const auto& b : body->context)
            if (bound.count(b.name) == 0) outer.push_back(b);

        // Gamma, p1 : A1, ..., pn : An |- body, then fold the pattern back up
        // with one (x)-E per pair node.
        std::vector<Binding> flat = outer;
        for (const auto& [p, ty] : leaves) flat.push_back({p->name, ty});
        DerivationPtr premise = reorder(flat, body);
        premise = fold_pattern(outer, l.pattern, l.annot, premise);

        Node d = new_node(Rule::LolliIntro, outer, lolli_type(l.annot, body->type));
        d->premises.push_back(std::move(premise));
        (void)loc;
        return d;
    }

    // Items of the context tail, each either a variable or a still-unsplit
    // pair pattern.
    struct Item {
        PatternPtr pattern;
        TypePtr type;
    };

    static std::vector<Binding> with_items(const std::vector<Binding>& outer, const std::vector<Item>& items) {
        std::vector<Binding> ctx = outer;
        for (const auto& it : items)
            ctx.push_back({it.pattern->is_var() ? it.pattern->name : pretty(it.pattern), it.type});
        return ctx;
    }

    DerivationPtr fold_pattern(const std::vector<Binding>& outer, const PatternPtr& p, const TypePtr& type,
                               DerivationPtr flat_premise) {
        // Build the chain top-down: items [p] -> ... -> all variables.
        std::vector<std::vector<Item>> stages{{Item{p, type}}};
        std::vector<std::size_t> splits;
        for (;;) {
            const auto& cur = stages.back();
            auto it = std::find_if(cur.begin(), cur.end(), [](const Item& i) { return !i.pattern->is_var(); });
            if (it == cur.end()) break;
            std::size_t pos = static_cast<std::size_t>(it - cur.begin());
            std::vector<Item> next(cur.begin(), it);
            next.push_back({it->pattern->left, it->type->left});
            next.push_back({it->pattern->right, it->type->right});
            next.insert(next.end(), it + 1, cur.end());
            splits.push_back(outer.size() + pos);
            stages.push_back(std::move(next));
        }
        DerivationPtr d = flat_premise;
        for (std::size_t s = splits.size(); s-- > 0;) {
            Node n = new_node(Rule::TensorElim, with_items(outer, stages[s]), d->type);
            n->split_at = splits[s];
            n->premises.push_back(d);
            d = n;
        }
        return d;
    }

    const GateRegistry& gates_;
    std::vector<Entry> scope_;
    std::vector<bool> used_;
};

}  // namespace

DerivationPtr derive(const Context& ctx, const Superposition& s, const GateRegistry& gates) {
    if (s.empty()) throw TypeError::non_normalized(0.0, {});

    const Skeleton& sk = s.skeleton();
    std::size_t k = 0;
    TermPtr open = holes_to_vars(sk.term, k);
    SourceLoc loc = sk.term->loc;

    Checker checker(gates);
    std::vector<Binding> premise_ctx;
    for (std::size_t i = 0; i < k; ++i) premise_ctx.push_back({hole_name(i), qbit_type()});
    premise_ctx.insert(premise_ctx.end(), ctx.bindings().begin(), ctx.bindings().end());
    for (const auto& b : premise_ctx) checker.push(b.name, b.type, {});

    DerivationPtr body = checker.derive(open);
    // Report unused user bindings (holes are always used), innermost last.
    for (const auto& b : ctx.bindings()) {
        bool used = std::any_of(body->context.begin(), body->context.end(),
                                [&](const Binding& c) { return c.name == b.name; });
        if (!used) throw TypeError::unused(b.name, loc);
    }

    if (ctx.empty()) {
        double n = norm2(s);
        if (std::abs(n - 1.0) > kNormTolerance) throw TypeError::non_normalized(n, loc);
    }

    Node amplitudes = new_node(Rule::QbitIntro, {}, k == 0 ? nullptr : qbit_power(k));
    amplitudes->qubits = k;
    amplitudes->amplitudes.assign(std::size_t{1} << k, Complex{});
    for (const auto& [key, e] : s.entries())
        amplitudes->amplitudes[bits_to_index(literal_bits(e.term))] += e.amplitude;

    Node cut = new_node(Rule::Cut, ctx.bindings(), body->type);
    cut->premises = {amplitudes, reorder(premise_ctx, body)};
    return cut;
}

TypePtr infer(const Context& ctx, const Superposition& s, const GateRegistry& gates) {
    return derive(ctx, s, gates)->type;
}

void check(const Context& ctx, const Superposition& s, const TypePtr& expected, const GateRegistry& gates) {
    TypePtr found = infer(ctx, s, gates);
    if (!type_equal(found, expected))
        throw TypeError::mismatch(expected, found, s.empty() ? SourceLoc{} : s.skeleton().term->loc);
}

TypePtr infer_term(const Context& ctx, const TermPtr& t, const GateRegistry& gates) {
    Superposition s;
    try {
        s = linearize(t);
    } catch (const CongruenceError& e) {
        throw TypeError::non_congruent(e.what(), t->loc);
    }
    return infer(ctx, s, gates);
}

namespace {

void render_rec(const Derivation& d, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += to_string(d.rule);
    out += "  ";
    for (std::size_t i = 0; i < d.context.size(); ++i) {
        if (i != 0) out += ", ";
        out += d.context[i].name + " : " + pretty(d.context[i].type);
    }
    out += " |- ";
    out += d.type ? pretty(d.type) : std::string("Unit");
    if (d.rule == Rule::GateIntro) out += "  [#" + d.gate + "]";
    out += "\n";
    for (const auto& p : d.premises) render_rec(*p, depth + 1, out);
}

}  // namespace

std::string render(const Derivation& d) {
    std::string out;
    render_rec(d, 0, out);
    return out;
}

}  // namespace qlam
