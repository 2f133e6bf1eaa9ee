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

#include "qlam/superposition.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "overloaded.hpp"
#include "qlam/parser.hpp"
#include "qlam/printer.hpp"

namespace qlam {

using detail::overloaded;

CongruenceError::CongruenceError(std::string first, std::string second)
    : std::runtime_error("superposition branches are not congruent: '" + first + "' vs '" +
                         second + "'"),
      first_(std::move(first)),
      second_(std::move(second)) {}

namespace {

TermPtr erase_literals(const TermPtr& t) {
    return std::visit(
        overloaded{
            [&](const node::Qubit&) -> TermPtr { return make_hole(t->loc); },
            [&](const node::Lam& l) -> TermPtr {
                return make_lam(l.pattern, l.annot, erase_literals(l.body), t->loc);
            },
            [&](const node::App& a) -> TermPtr {
                return make_app(erase_literals(a.fun), erase_literals(a.arg), t->loc);
            },
            [&](const node::Pair& p) -> TermPtr {
                return make_pair(erase_literals(p.left), erase_literals(p.right), t->loc);
            },
            [&](const node::Sum& s) -> TermPtr {
                return make_sum(erase_literals(s.left), erase_literals(s.right), t->loc);
            },
            [&](const node::Scale& s) -> TermPtr {
                return make_scale(s.coeff, erase_literals(s.body), t->loc);
            },
            [&](const auto&) -> TermPtr { return t; },
        },
        t->node);
}

void collect_bits(const TermPtr& t, std::vector<int>& out) {
    std::visit(overloaded{
                   [&](const node::Qubit& q) { out.push_back(q.bit); },
                   [&](const node::Lam& l) { collect_bits(l.body, out); },
                   [&](const node::App& a) {
                       collect_bits(a.fun, out);
                       collect_bits(a.arg, out);
                   },
                   [&](const node::Pair& p) {
                       collect_bits(p.left, out);
                       collect_bits(p.right, out);
                   },
                   [&](const node::Sum& s) {
                       collect_bits(s.left, out);
                       collect_bits(s.right, out);
                   },
                   [&](const node::Scale& s) { collect_bits(s.body, out); },
                   [](const auto&) {},
               },
               t->node);
}

std::size_t count_holes(const TermPtr& t) {
    return std::visit(overloaded{
                          [](const node::Hole&) -> std::size_t { return 1; },
                          [](const node::Lam& l) { return count_holes(l.body); },
                          [](const node::App& a) { return count_holes(a.fun) + count_holes(a.arg); },
                          [](const node::Pair& p) { return count_holes(p.left) + count_holes(p.right); },
                          [](const node::Sum& s) { return count_holes(s.left) + count_holes(s.right); },
                          [](const node::Scale& s) { return count_holes(s.body); },
                          [](const auto&) -> std::size_t { return 0; },
                      },
                      t->node);
}

using Branches = std::vector<std::pair<TermPtr, Complex>>;

template <class Make>
Branches product(const Branches& a, const Branches& b, Make make) {
    Branches out;
    out.reserve(a.size() * b.size());
    for (const auto& [ta, ca] : a)
        for (const auto& [tb, cb] : b) out.emplace_back(make(ta, tb), ca * cb);
    return out;
}

Branches expand(const TermPtr& t) {
    if (is_basis(t)) return {{t, 1.0}};
    return std::visit(
        overloaded{
            [&](const node::Lam& l) {
                Branches out;
                for (auto& [b, c] : expand(l.body))
                    out.emplace_back(make_lam(l.pattern, l.annot, b, t->loc), c);
                return out;
            },
            [&](const node::App& a) {
                return product(expand(a.fun), expand(a.arg), [&](const TermPtr& f, const TermPtr& x) {
                    return make_app(f, x, t->loc);
                });
            },
            [&](const node::Pair& p) {
                return product(expand(p.left), expand(p.right), [&](const TermPtr& l, const TermPtr& r) {
                    return make_pair(l, r, t->loc);
                });
            },
            [&](const node::Sum& s) {
                Branches out = expand(s.left);
                Branches right = expand(s.right);
                out.insert(out.end(), right.begin(), right.end());
                return out;
            },
            [&](const node::Scale& s) {
                Branches out = expand(s.body);
                for (auto& entry : out) entry.second *= s.coeff;
                return out;
            },
            [&](const auto&) { return Branches{{t, 1.0}}; },
        },
        t->node);
}

}  // namespace

Skeleton skeleton_of(const TermPtr& basis) { return Skeleton{erase_literals(basis)}; }

std::string Skeleton::text() const { return pretty(term); }

std::size_t Skeleton::holes() const { return count_holes(term); }

bool operator==(const Skeleton& a, const Skeleton& b) {
    return structurally_equal(a.term, b.term) || alpha_eq(a.term, b.term);
}

std::vector<int> literal_bits(const TermPtr& basis) {
    std::vector<int> out;
    collect_bits(basis, out);
    return out;
}

Superposition Superposition::of(const TermPtr& basis, Complex amplitude) {
    SuperpositionBuilder b;
    b.add(basis, amplitude);
    return b.build();
}

const Skeleton& Superposition::skeleton() const {
    if (!skeleton_) throw std::logic_error("skeleton of an empty superposition");
    return *skeleton_;
}

Complex Superposition::amplitude_of(const TermPtr& basis) const {
    auto it = entries_.find(pretty(canonicalize(basis)));
    return it == entries_.end() ? Complex{} : it->second.amplitude;
}

TermPtr Superposition::embed() const {
    TermPtr out;
    for (const auto& [key, e] : entries_) {
        TermPtr part = e.amplitude == Complex(1.0) ? e.term : make_scale(e.amplitude, e.term);
        out = out ? make_sum(out, part) : part;
    }
    if (!out) return make_scale(0.0, make_qubit(0));
    return out;
}

Superposition Superposition::scaled(Complex factor) const {
    SuperpositionBuilder b;
    b.add(*this, factor);
    return b.build();
}

void SuperpositionBuilder::add(const TermPtr& basis, Complex amplitude) {
    if (!is_basis(basis)) throw std::invalid_argument("SuperpositionBuilder::add: term has sums or scalars");
    std::string key = pretty(canonicalize(basis));
    auto it = acc_.find(key);
    if (it == acc_.end())
        acc_.emplace(std::move(key), Superposition::Entry{basis, amplitude});
    else
        it->second.amplitude += amplitude;
}

void SuperpositionBuilder::add(const Superposition& s, Complex factor) {
    for (const auto& [key, e] : s.entries()) {
        auto it = acc_.find(key);
        if (it == acc_.end())
            acc_.emplace(key, Superposition::Entry{e.term, e.amplitude * factor});
        else
            it->second.amplitude += e.amplitude * factor;
    }
}

Superposition SuperpositionBuilder::build() const {
    Superposition s;
    for (const auto& [key, e] : acc_) {
        if (std::abs(e.amplitude) < kPruneThreshold) continue;
        Skeleton sk = skeleton_of(e.term);
        if (!s.skeleton_) {
            s.skeleton_ = sk;
        } else if (!(*s.skeleton_ == sk)) {
            throw CongruenceError(s.skeleton_->text(), sk.text());
        }
        s.entries_.emplace(key, e);
    }
    return s;
}

Superposition linearize(const TermPtr& t) {
    SuperpositionBuilder b;
    for (const auto& [basis, c] : expand(t)) b.add(basis, c);
    return b.build();
}

double norm2(const Superposition& s) {
    double n = 0.0;
    for (const auto& [key, e] : s.entries()) n += std::norm(e.amplitude);
    return n;
}

bool super_eq(const Superposition& a, const Superposition& b, CompareMode mode, double tol) {
    Complex phase = 1.0;
    if (mode == CompareMode::GlobalPhase) {
        if (a.empty() || b.empty()) return a.empty() && b.empty();
        bool found = false;
        for (const auto& [key, ea] : a.entries()) {
            auto it = b.entries().find(key);
            if (it == b.entries().end()) continue;
            if (std::abs(ea.amplitude) <= tol || std::abs(it->second.amplitude) <= tol) continue;
            Complex ratio = ea.amplitude / it->second.amplitude;
            phase = ratio / std::abs(ratio);
            found = true;
            break;
        }
        if (!found) return false;
    }
    std::set<std::string> keys;
    for (const auto& [k, e] : a.entries()) keys.insert(k);
    for (const auto& [k, e] : b.entries()) keys.insert(k);
    for (const auto& k : keys) {
        auto ia = a.entries().find(k);
        auto ib = b.entries().find(k);
        Complex va = ia == a.entries().end() ? Complex{} : ia->second.amplitude;
        Complex vb = ib == b.entries().end() ? Complex{} : ib->second.amplitude;
        if (std::abs(va - phase * vb) > tol) return false;
    }
    return true;
}

nlohmann::json to_json(const Superposition& s) {
    auto out = nlohmann::json::array();
    for (const auto& [key, e] : s.entries())
        out.push_back({{"term", key}, {"re", e.amplitude.real()}, {"im", e.amplitude.imag()}});
    return out;
}

Superposition superposition_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("superposition JSON must be an array");
    SuperpositionBuilder b;
    for (const auto& item : j) {
        TermPtr t = parse_term(item.at("term").get<std::string>());
        Complex c(item.at("re").get<double>(), item.at("im").get<double>());
        b.add(linearize(t), c);
    }
    return b.build();
}

}  // namespace qlam
