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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlam/syntax.hpp"

namespace qlam::test {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    /// Uniform in [lo, hi].
    int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    Complex complex() { return {real(-2.0, 2.0), coin() ? real(-2.0, 2.0) : 0.0}; }
    double gaussian() { return std::normal_distribution<double>()(eng_); }
    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

TypePtr random_type(Rng& rng, int depth);

/// Arbitrary raw term, not necessarily well-typed.
TermPtr random_raw_term(Rng& rng, int depth);

/// Renames every binder to a fresh name, keeping free names.
TermPtr rename_binders(const TermPtr& t, Rng& rng);

/// Sum-free term with qubit literals, possibly under abstractions.
TermPtr random_basis_term(Rng& rng, int depth);

struct GateOp {
    std::string gate;
    std::vector<std::size_t> wires;
};

/// Wire w starts in |init[w]>, or H|init[w]> when hadamard[w].
struct Circuit {
    std::size_t qubits = 1;
    std::vector<int> init;
    std::vector<bool> hadamard;
    std::vector<GateOp> ops;
};

Circuit random_circuit(Rng& rng, std::size_t max_qubits = 4, std::size_t max_depth = 6);

/// Closed term of type Qbit^n computing the circuit as a chain of lets.
/// Each gate use is randomly wrapped: passed to an abstraction, applied
/// through an apply combinator, eta-expanded, curried, or composed with an
/// identity abstraction.
TermPtr circuit_term(const Circuit& c, Rng& rng);

/// The same computation with its input wires left free as w0, w1, ...
TermPtr open_circuit_term(const Circuit& c, Rng& rng);

/// Independent state-vector simulation; wire 0 is the most significant bit.
Eigen::VectorXcd simulate(const Circuit& c);
Eigen::VectorXcd simulate(const Circuit& c, const Eigen::VectorXcd& input);

/// Textbook matrices written out independently of the library.
Eigen::MatrixXcd oracle_gate(const std::string& name);

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index dim);

}  // namespace qlam::test
