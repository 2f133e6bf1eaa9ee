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

#include "qlam/syntax.hpp"

#include <stdexcept>
#include <utility>

#include "overloaded.hpp"

namespace qlam {

using detail::overloaded;

TypePtr qbit_type() {
    static const TypePtr q = std::make_shared<const Type>(Type{TypeKind::Qbit, nullptr, nullptr});
    return q;
}

TypePtr lolli_type(TypePtr domain, TypePtr codomain) {
    return std::make_shared<const Type>(Type{TypeKind::Lolli, std::move(domain), std::move(codomain)});
}

TypePtr tensor_type(TypePtr left, TypePtr right) {
    return std::make_shared<const Type>(Type{TypeKind::Tensor, std::move(left), std::move(right)});
}

TypePtr qbit_power(std::size_t n) {
    if (n == 0) throw std::invalid_argument("qbit_power: n must be positive");
    TypePtr t = qbit_type();
    for (std::size_t i = 1; i < n; ++i) t = tensor_type(t, qbit_type());
    return t;
}

std::size_t qbit_count(const Type& t) {
    switch (t.kind) {
        case TypeKind::Qbit:
            return 1;
        case TypeKind::Tensor: {
            std::size_t l = qbit_count(*t.left);
            std::size_t r = qbit_count(*t.right);
            return (l == 0 || r == 0) ? 0 : l + r;
        }
        case TypeKind::Lolli:
            return 0;
    }
    return 0;
}

bool type_equal(const Type& a, const Type& b) {
    if (&a == &b) return true;
    if (a.kind != b.kind) return false;
    if (a.kind == TypeKind::Qbit) return true;
    return type_equal(*a.left, *b.left) && type_equal(*a.right, *b.right);
}

bool is_first_order(const Type& t) {
    switch (t.kind) {
        case TypeKind::Qbit:
            return true;
        case TypeKind::Tensor:
            return is_first_order(*t.left) && is_first_order(*t.right);
        case TypeKind::Lolli:
            return false;
    }
    return false;
}

PatternPtr var_pattern(std::string name, SourceLoc loc) {
    return std::make_shared<const Pattern>(Pattern{std::move(name), nullptr, nullptr, loc});
}

PatternPtr pair_pattern(PatternPtr left, PatternPtr right, SourceLoc loc) {
    return std::make_shared<const Pattern>(Pattern{{}, std::move(left), std::move(right), loc});
}

namespace {

void collect_pattern_vars(const Pattern& p, std::vector<std::string>& out) {
    if (p.is_var()) {
        out.push_back(p.name);
        return;
    }
    collect_pattern_vars(*p.left, out);
    collect_pattern_vars(*p.right, out);
}

TermPtr make(Term::Node n, SourceLoc loc) {
    return std::make_shared<const Term>(Term{std::move(n), loc});
}

}  // namespace

std::vector<std::string> pattern_vars(const Pattern& p) {
    std::vector<std::string> out;
    collect_pattern_vars(p, out);
    return out;
}

TermPtr make_var(std::string name, SourceLoc loc) { return make(node::Var{std::move(name)}, loc); }
TermPtr make_lam(PatternPtr pattern, TypePtr annot, TermPtr body, SourceLoc loc) {
    return make(node::Lam{std::move(pattern), std::move(annot), std::move(body)}, loc);
}
TermPtr make_app(TermPtr fun, TermPtr arg, SourceLoc loc) {
    return make(node::App{std::move(fun), std::move(arg)}, loc);
}
TermPtr make_pair(TermPtr left, TermPtr right, SourceLoc loc) {
    return make(node::Pair{std::move(left), std::move(right)}, loc);
}
TermPtr make_qubit(int bit, SourceLoc loc) { return make(node::Qubit{bit}, loc); }
TermPtr make_gate(std::string name, SourceLoc loc) { return make(node::Gate{std::move(name)}, loc); }
TermPtr make_sum(TermPtr left, TermPtr right, SourceLoc loc) {
    return make(node::Sum{std::move(left), std::move(right)}, loc);
}
TermPtr make_scale(Complex coeff, TermPtr body, SourceLoc loc) {
    return make(node::Scale{coeff, std::move(body)}, loc);
}
TermPtr make_hole(SourceLoc loc) { return make(node::Hole{}, loc); }

TermPtr make_tensor(const std::vector<TermPtr>& items) {
    if (items.empty()) throw std::invalid_argument("make_tensor: empty tuple");
    TermPtr t = items.front();
    for (std::size_t i = 1; i < items.size(); ++i) t = make_pair(t, items[i]);
    return t;
}

namespace {

void collect_free(const TermPtr& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
    std::visit(overloaded{
                   [&](const node::Var& v) {
                       if (bound.find(v.name) == bound.end()) out.insert(v.name);
                   },
                   [&](const node::Lam& l) {
                       auto vars = pattern_vars(*l.pattern);
                       for (const auto& v : vars) bound.insert(v);
                       collect_free(l.body, bound, out);
                       for (const auto& v : vars) bound.erase(bound.find(v));
                   },
                   [&](const node::App& a) {
                       collect_free(a.fun, bound, out);
                       collect_free(a.arg, bound, out);
                   },
                   [&](const node::Pair& p) {
                       collect_free(p.left, bound, out);
                       collect_free(p.right, bound, out);
                   },
                   [&](const node::Sum& s) {
                       collect_free(s.left, bound, out);
                       collect_free(s.right, bound, out);
                   },
                   [&](const node::Scale& s) { collect_free(s.body, bound, out); },
                   [](const auto&) {},
               },
               t->node);
}

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
    std::multiset<std::string> bound;
    std::set<std::string> out;
    collect_free(t, bound, out);
    return out;
}

std::size_t term_size(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const node::Lam& l) { return 1 + term_size(l.body); },
                          [](const node::App& a) { return 1 + term_size(a.fun) + term_size(a.arg); },
                          [](const node::Pair& p) { return 1 + term_size(p.left) + term_size(p.right); },
                          [](const node::Sum& s) { return 1 + term_size(s.left) + term_size(s.right); },
                          [](const node::Scale& s) { return 1 + term_size(s.body); },
                          [](const auto&) -> std::size_t { return 1; },
                      },
                      t->node);
}

bool is_basis(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const node::Lam& l) { return is_basis(l.body); },
                          [](const node::App& a) { return is_basis(a.fun) && is_basis(a.arg); },
                          [](const node::Pair& p) { return is_basis(p.left) && is_basis(p.right); },
                          [](const node::Sum&) { return false; },
                          [](const node::Scale&) { return false; },
                          [](const auto&) { return true; },
                      },
                      t->node);
}

namespace {

bool pattern_equal(const Pattern& a, const Pattern& b) {
    if (a.is_var() != b.is_var()) return false;
    if (a.is_var()) return a.name == b.name;
    return pattern_equal(*a.left, *b.left) && pattern_equal(*a.right, *b.right);
}

}  // namespace

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        overloaded{
            [&](const node::Var& x) { return x.name == b->as<node::Var>()->name; },
            [&](const node::Lam& x) {
                const auto* y = b->as<node::Lam>();
                return pattern_equal(*x.pattern, *y->pattern) && type_equal(x.annot, y->annot) &&
                       structurally_equal(x.body, y->body);
            },
            [&](const node::App& x) {
                const auto* y = b->as<node::App>();
                return structurally_equal(x.fun, y->fun) && structurally_equal(x.arg, y->arg);
            },
            [&](const node::Pair& x) {
                const auto* y = b->as<node::Pair>();
                return structurally_equal(x.left, y->left) && structurally_equal(x.right, y->right);
            },
            [&](const node::Qubit& x) { return x.bit == b->as<node::Qubit>()->bit; },
            [&](const node::Gate& x) { return x.name == b->as<node::Gate>()->name; },
            [&](const node::Sum& x) {
                const auto* y = b->as<node::Sum>();
                return structurally_equal(x.left, y->left) && structurally_equal(x.right, y->right);
            },
            [&](const node::Scale& x) {
                const auto* y = b->as<node::Scale>();
                return x.coeff == y->coeff && structurally_equal(x.body, y->body);
            },
            [](const node::Hole&) { return true; },
        },
        a->node);
}

namespace {

class Canonicalizer {
public:
    explicit Canonicalizer(std::set<std::string> avoid) : avoid_(std::move(avoid)) {}

    TermPtr run(const TermPtr& t, const std::map<std::string, std::string>& env) {
        return std::visit(
            overloaded{
                [&](const node::Var& v) -> TermPtr {
                    auto it = env.find(v.name);
                    if (it == env.end() || it->second == v.name) return t;
                    return make_var(it->second, t->loc);
                },
                [&](const node::Lam& l) -> TermPtr {
                    auto inner = env;
                    PatternPtr p = rename_pattern(*l.pattern, inner);
                    return make_lam(p, l.annot, run(l.body, inner), t->loc);
                },
                [&](const node::App& a) -> TermPtr {
                    return make_app(run(a.fun, env), run(a.arg, env), t->loc);
                },
                [&](const node::Pair& p) -> TermPtr {
                    return make_pair(run(p.left, env), run(p.right, env), t->loc);
                },
                [&](const node::Sum& s) -> TermPtr {
                    return make_sum(run(s.left, env), run(s.right, env), t->loc);
                },
                [&](const node::Scale& s) -> TermPtr {
                    return make_scale(s.coeff, run(s.body, env), t->loc);
                },
                [&](const auto&) -> TermPtr { return t; },
            },
            t->node);
    }

private:
    PatternPtr rename_pattern(const Pattern& p, std::map<std::string, std::string>& env) {
        if (p.is_var()) {
            std::string fresh;
            do {
                fresh = "v" + std::to_string(counter_++);
            } while (avoid_.count(fresh) != 0);
            env[p.name] = fresh;
            return var_pattern(fresh, p.loc);
        }
        PatternPtr l = rename_pattern(*p.left, env);
        PatternPtr r = rename_pattern(*p.right, env);
        return pair_pattern(l, r, p.loc);
    }

    std::set<std::string> avoid_;
    std::size_t counter_ = 0;
};

}  // namespace

TermPtr canonicalize(const TermPtr& t) {
    Canonicalizer c(free_vars(t));
    return c.run(t, {});
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
    return structurally_equal(canonicalize(a), canonicalize(b));
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string name = base + "'";
    while (avoid.count(name) != 0) name += "'";
    return name;
}

TermPtr subst_rec(const TermPtr& t, const Bindings& bindings) {
    if (bindings.empty()) return t;
    return std::visit(
        overloaded{
            [&](const node::Var& v) -> TermPtr {
                auto it = bindings.find(v.name);
                return it == bindings.end() ? t : it->second;
            },
            [&](const node::Lam& l) -> TermPtr {
                auto vars = pattern_vars(*l.pattern);
                Bindings inner = bindings;
                for (const auto& v : vars) inner.erase(v);

                std::set<std::string> body_free = free_vars(l.body);
                std::set<std::string> incoming;
                for (const auto& [name, term] : inner) {
                    if (body_free.count(name) == 0) continue;
                    auto fv = free_vars(term);
                    incoming.insert(fv.begin(), fv.end());
                }

                std::map<std::string, std::string> renames;
                std::set<std::string> avoid = incoming;
                avoid.insert(body_free.begin(), body_free.end());
                avoid.insert(vars.begin(), vars.end());
                for (const auto& v : vars) {
                    if (incoming.count(v) == 0) continue;
                    std::string fresh = fresh_name(v, avoid);
                    avoid.insert(fresh);
                    renames[v] = fresh;
                    inner[v] = make_var(fresh);
                }

                PatternPtr pattern = l.pattern;
                if (!renames.empty()) {
                    struct Renamer {
                        const std::map<std::string, std::string>& names;
                        PatternPtr operator()(const PatternPtr& p) const {
                            if (p->is_var()) {
                                auto it = names.find(p->name);
                                return it == names.end() ? p : var_pattern(it->second, p->loc);
                            }
                            return pair_pattern((*this)(p->left), (*this)(p->right), p->loc);
                        }
                    };
                    pattern = Renamer{renames}(pattern);
                }
                return make_lam(pattern, l.annot, subst_rec(l.body, inner), t->loc);
            },
            [&](const node::App& a) -> TermPtr {
                return make_app(subst_rec(a.fun, bindings), subst_rec(a.arg, bindings), t->loc);
            },
            [&](const node::Pair& p) -> TermPtr {
                return make_pair(subst_rec(p.left, bindings), subst_rec(p.right, bindings), t->loc);
            },
            [&](const node::Sum& s) -> TermPtr {
                return make_sum(subst_rec(s.left, bindings), subst_rec(s.right, bindings), t->loc);
            },
            [&](const node::Scale& s) -> TermPtr {
                return make_scale(s.coeff, subst_rec(s.body, bindings), t->loc);
            },
            [&](const auto&) -> TermPtr { return t; },
        },
        t->node);
}

}  // namespace

TermPtr subst(const TermPtr& body, const Bindings& bindings) { return subst_rec(body, bindings); }

}  // namespace qlam
