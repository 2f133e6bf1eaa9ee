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

#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace qlam::test {

namespace {

const std::vector<std::string> kNames = {"x", "y", "z", "f", "g", "q0", "a'", "b_1"};
const std::vector<std::string> kGates = {"H", "X", "CNOT", "T"};

PatternPtr random_pattern(Rng& rng, std::vector<std::string>& pool, int depth) {
    if (pool.size() < 2 || depth == 0 || rng.coin(0.6)) {
        std::size_t i = rng.index(pool.size());
        std::string name = pool[i];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
        return var_pattern(name);
    }
    PatternPtr l = random_pattern(rng, pool, depth - 1);
    if (pool.empty()) return l;
    return pair_pattern(l, random_pattern(rng, pool, depth - 1));
}

Complex random_scalar(Rng& rng) {
    switch (rng.between(0, 3)) {
        case 0:
            return {static_cast<double>(rng.between(-3, 3)), 0.0};
        case 1:
            return {rng.real(-2.0, 2.0), 0.0};
        case 2:
            return {0.0, rng.real(-2.0, 2.0)};
        default:
            return {rng.real(-2.0, 2.0), rng.real(-2.0, 2.0)};
    }
}

}  // namespace

TypePtr random_type(Rng& rng, int depth) {
    if (depth == 0 || rng.coin(0.35)) return qbit_type();
    TypePtr l = random_type(rng, depth - 1);
    TypePtr r = random_type(rng, depth - 1);
    return rng.coin() ? lolli_type(l, r) : tensor_type(l, r);
}

TermPtr random_raw_term(Rng& rng, int depth) {
    int choice = depth == 0 ? rng.between(0, 2) : rng.between(0, 7);
    switch (choice) {
        case 0:
            return make_var(kNames[rng.index(kNames.size())]);
        case 1:
            return make_qubit(rng.between(0, 1));
        case 2:
            return make_gate(kGates[rng.index(kGates.size())]);
        case 3: {
            std::vector<std::string> pool = kNames;
            PatternPtr p = random_pattern(rng, pool, 2);
            return make_lam(p, random_type(rng, 2), random_raw_term(rng, depth - 1));
        }
        case 4: {
            TermPtr f = random_raw_term(rng, depth - 1);
            return make_app(f, random_raw_term(rng, depth - 1));
        }
        case 5: {
            TermPtr l = random_raw_term(rng, depth - 1);
            return make_pair(l, random_raw_term(rng, depth - 1));
        }
        case 6: {
            TermPtr l = random_raw_term(rng, depth - 1);
            return make_sum(l, random_raw_term(rng, depth - 1));
        }
        default:
            return make_scale(random_scalar(rng), random_raw_term(rng, depth - 1));
    }
}

namespace {

struct Renamer {
    Rng& rng;
    int counter = 0;

    PatternPtr pattern(const PatternPtr& p, std::map<std::string, std::string>& env) {
        if (p->is_var()) {
            std::string fresh = "rn" + std::to_string(counter++) + (rng.coin() ? "'" : "");
            env[p->name] = fresh;
            return var_pattern(fresh);
        }
        PatternPtr l = pattern(p->left, env);
        return pair_pattern(l, pattern(p->right, env));
    }

    TermPtr run(const TermPtr& t, const std::map<std::string, std::string>& env) {
        if (const auto* v = t->as<node::Var>()) {
            auto it = env.find(v->name);
            return it == env.end() ? t : make_var(it->second);
        }
        if (const auto* l = t->as<node::Lam>()) {
            auto inner = env;
            PatternPtr p = pattern(l->pattern, inner);
            return make_lam(p, l->annot, run(l->body, inner));
        }
        if (const auto* a = t->as<node::App>()) {
            TermPtr f = run(a->fun, env);
            return make_app(f, run(a->arg, env));
        }
        if (const auto* p = t->as<node::Pair>()) {
            TermPtr l = run(p->left, env);
            return make_pair(l, run(p->right, env));
        }
        if (const auto* s = t->as<node::Sum>()) {
            TermPtr l = run(s->left, env);
            return make_sum(l, run(s->right, env));
        }
        if (const auto* s = t->as<node::Scale>()) return make_scale(s->coeff, run(s->body, env));
        return t;
    }
};

}  // namespace

TermPtr rename_binders(const TermPtr& t, Rng& rng) {
    Renamer r{rng};
    return r.run(t, {});
}

TermPtr random_basis_term(Rng& rng, int depth) {
    int choice = depth == 0 ? rng.between(0, 4) : rng.between(0, 7);
    switch (choice) {
        case 0:
            return make_var(kNames[rng.index(kNames.size())]);
        case 1:
        case 2:
        case 3:
            return make_qubit(rng.between(0, 1));
        case 4:
            return make_gate(kGates[rng.index(kGates.size())]);
        case 5: {
            std::vector<std::string> pool = kNames;
            PatternPtr p = random_pattern(rng, pool, 1);
            return make_lam(p, random_type(rng, 1), random_basis_term(rng, depth - 1));
        }
        case 6: {
            TermPtr f = random_basis_term(rng, depth - 1);
            return make_app(f, random_basis_term(rng, depth - 1));
        }
        default: {
            TermPtr l = random_basis_term(rng, depth - 1);
            return make_pair(l, random_basis_term(rng, depth - 1));
        }
    }
}

Circuit random_circuit(Rng& rng, std::size_t max_qubits, std::size_t max_depth) {
    static const std::vector<std::string> one = {"H", "X", "Y", "Z", "S", "T"};
    static const std::vector<std::string> two = {"CNOT", "CZ", "SWAP"};
    Circuit c;
    c.qubits = static_cast<std::size_t>(rng.between(1, static_cast<int>(max_qubits)));
    for (std::size_t w = 0; w < c.qubits; ++w) {
        c.init.push_back(rng.between(0, 1));
        c.hadamard.push_back(rng.coin(0.3));
    }
    std::size_t depth = static_cast<std::size_t>(rng.between(1, static_cast<int>(max_depth)));
    for (std::size_t d = 0; d < depth; ++d) {
        std::size_t arity = 1;
        int roll = rng.between(0, 9);
        if (c.qubits >= 3 && roll == 0)
            arity = 3;
        else if (c.qubits >= 2 && roll <= 4)
            arity = 2;
        std::vector<std::size_t> wires(c.qubits);
        for (std::size_t w = 0; w < c.qubits; ++w) wires[w] = w;
        std::shuffle(wires.begin(), wires.end(), rng.engine());
        wires.resize(arity);
        std::string gate = arity == 1 ? one[rng.index(one.size())] : arity == 2 ? two[rng.index(two.size())] : "CCNOT";
        c.ops.push_back({gate, wires});
    }
    return c;
}

namespace {

struct Layer {
    PatternPtr pattern;
    TypePtr type;
    TermPtr rhs;
};

PatternPtr tuple_pattern(const std::vector<std::string>& names) {
    PatternPtr p = var_pattern(names[0]);
    for (std::size_t i = 1; i < names.size(); ++i) p = pair_pattern(p, var_pattern(names[i]));
    return p;
}

TermPtr tuple_term(const std::vector<std::string>& names) {
    std::vector<TermPtr> items;
    for (const auto& n : names) items.push_back(make_var(n));
    return make_tensor(items);
}

class CircuitBuilder {
public:
    explicit CircuitBuilder(Rng& rng) : rng_(rng) {}

    TermPtr build(const Circuit& c, bool closed) {
        std::vector<std::string> cur;
        for (std::size_t w = 0; w < c.qubits; ++w) cur.push_back("w" + std::to_string(w));
        std::vector<Layer> layers;
        if (closed) {
            std::vector<TermPtr> init;
            for (std::size_t w = 0; w < c.qubits; ++w) init.push_back(initial_state(c.init[w], c.hadamard[w]));
            layers.push_back({tuple_pattern(cur), qbit_power(c.qubits), make_tensor(init)});
        }
        std::vector<int> version(c.qubits, 0);
        for (const auto& op : c.ops) {
            std::vector<std::string> in, out;
            for (auto w : op.wires) {
                in.push_back(cur[w]);
                cur[w] = "w" + std::to_string(w) + "_" + std::to_string(++version[w]);
                out.push_back(cur[w]);
            }
            layers.push_back({tuple_pattern(out), qbit_power(op.wires.size()), wrapped(op.gate, in)});
        }
        TermPtr body = tuple_term(cur);
        for (auto it = layers.rbegin(); it != layers.rend(); ++it)
            body = make_app(make_lam(it->pattern, it->type, body), it->rhs);
        return body;
    }

private:
    std::string fresh(const char* base) { return base + std::to_string(counter_++); }

    TermPtr initial_state(int bit, bool hadamard) {
        if (!hadamard) return make_qubit(bit);
        if (rng_.coin()) return make_app(make_gate("H"), make_qubit(bit));
        const double h = 1.0 / std::sqrt(2.0);
        return make_sum(make_scale(h, make_qubit(0)), make_scale(bit == 0 ? h : -h, make_qubit(1)));
    }

    TermPtr wrapped(const std::string& gate, const std::vector<std::string>& in) {
        const std::size_t k = in.size();
        TypePtr t = qbit_power(k);
        TypePtr fun = lolli_type(t, t);
        TermPtr g = make_gate(gate);
        TermPtr arg = tuple_term(in);
        int choice = rng_.between(0, k >= 2 ? 6 : 4);
        // The composition combinator on three wires has a 2^18 carrier.
        if (choice == 4 && k >= 3) choice = 2;
        switch (choice) {
            case 0:
                return make_app(g, arg);
            case 1: {
                std::string f = fresh("f");
                return make_app(make_lam(var_pattern(f), fun, make_app(make_var(f), arg)), g);
            }
            case 2: {
                std::string f = fresh("f"), x = fresh("x");
                TermPtr apply = make_lam(var_pattern(f), fun,
                                         make_lam(var_pattern(x), t, make_app(make_var(f), make_var(x))));
                return make_app(make_app(apply, g), arg);
            }
            case 3: {
                std::string x = fresh("x");
                return make_app(make_lam(var_pattern(x), t, make_app(g, make_var(x))), arg);
            }
            case 4: {
                std::string f = fresh("f"), h = fresh("g"), x = fresh("x"), y = fresh("y");
                TermPtr compose = make_lam(
                    var_pattern(f), fun,
                    make_lam(var_pattern(h), fun,
                             make_lam(var_pattern(x), t,
                                      make_app(make_var(h), make_app(make_var(f), make_var(x))))));
                TermPtr id = make_lam(var_pattern(y), t, make_var(y));
                if (rng_.coin()) std::swap(g, id);
                return make_app(make_app(make_app(compose, g), id), arg);
            }
            case 5: {
                if (k == 2) {
                    std::string a = fresh("a"), b = fresh("b");
                    TermPtr curried = make_lam(
                        var_pattern(a), qbit_type(),
                        make_lam(var_pattern(b), qbit_type(),
                                 make_app(g, make_pair(make_var(a), make_var(b)))));
                    return make_app(make_app(curried, make_var(in[0])), make_var(in[1]));
                }
                [[fallthrough]];
            }
            default: {
                std::vector<std::string> names;
                for (std::size_t i = 0; i < k; ++i) names.push_back(fresh("p"));
                return make_app(make_lam(tuple_pattern(names), t, make_app(g, tuple_term(names))), arg);
            }
        }
    }

    Rng& rng_;
    int counter_ = 0;
};

}  // namespace

TermPtr circuit_term(const Circuit& c, Rng& rng) { return CircuitBuilder(rng).build(c, true); }

TermPtr open_circuit_term(const Circuit& c, Rng& rng) { return CircuitBuilder(rng).build(c, false); }

Eigen::MatrixXcd oracle_gate(const std::string& name) {
    using M = Eigen::MatrixXcd;
    const Complex i(0.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    auto perm = [](int dim, const std::vector<int>& image) {
        M m = M::Zero(dim, dim);
        for (int c = 0; c < dim; ++c) m(image[static_cast<std::size_t>(c)], c) = 1.0;
        return m;
    };
    M m(2, 2);
    if (name == "I") {
        m << 1, 0, 0, 1;
    } else if (name == "H") {
        m << r, r, r, -r;
    } else if (name == "X") {
        m << 0, 1, 1, 0;
    } else if (name == "Y") {
        m << 0, -i, i, 0;
    } else if (name == "Z") {
        m << 1, 0, 0, -1;
    } else if (name == "S") {
        m << 1, 0, 0, i;
    } else if (name == "T") {
        m << 1, 0, 0, std::exp(i * (M_PI / 4.0));
    } else if (name == "CNOT") {
        return perm(4, {0, 1, 3, 2});
    } else if (name == "SWAP") {
        return perm(4, {0, 2, 1, 3});
    } else if (name == "CCNOT") {
        return perm(8, {0, 1, 2, 3, 4, 5, 7, 6});
    } else if (name == "CZ") {
        M cz = M::Identity(4, 4);
        cz(3, 3) = -1.0;
        return cz;
    } else {
        throw std::invalid_argument("no oracle matrix for " + name);
    }
    return m;
}

Eigen::VectorXcd simulate(const Circuit& c, const Eigen::VectorXcd& input) {
    const std::size_t n = c.qubits;
    Eigen::VectorXcd state = input;
    auto bit = [n](std::size_t idx, std::size_t wire) { return (idx >> (n - 1 - wire)) & 1U; };
    for (const auto& op : c.ops) {
        Eigen::MatrixXcd u = oracle_gate(op.gate);
        const std::size_t k = op.wires.size();
        Eigen::VectorXcd next = Eigen::VectorXcd::Zero(state.size());
        for (std::size_t idx = 0; idx < static_cast<std::size_t>(state.size()); ++idx) {
            std::size_t sub = 0;
            for (auto w : op.wires) sub = (sub << 1) | bit(idx, w);
            for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
                std::size_t target = idx;
                for (std::size_t j = 0; j < k; ++j) {
                    std::size_t pos = n - 1 - op.wires[j];
                    std::size_t b = (row >> (k - 1 - j)) & 1U;
                    target = (target & ~(std::size_t{1} << pos)) | (b << pos);
                }
                next(static_cast<Eigen::Index>(target)) +=
                    u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(sub)) *
                    state(static_cast<Eigen::Index>(idx));
            }
        }
        state = next;
    }
    return state;
}

Eigen::VectorXcd simulate(const Circuit& c) {
    Eigen::VectorXcd state = Eigen::VectorXcd::Ones(1);
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t w = 0; w < c.qubits; ++w) {
        Eigen::VectorXcd wire(2);
        if (c.hadamard[w])
            wire << r, (c.init[w] == 0 ? r : -r);
        else
            wire << (c.init[w] == 0 ? 1.0 : 0.0), (c.init[w] == 0 ? 0.0 : 1.0);
        Eigen::VectorXcd next(state.size() * 2);
        for (Eigen::Index a = 0; a < state.size(); ++a)
            for (Eigen::Index b = 0; b < 2; ++b) next(a * 2 + b) = state(a) * wire(b);
        state = next;
    }
    return simulate(c, state);
}

Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index dim) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = Complex(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
}

}  // namespace qlam::test
