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
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qlam/superposition.hpp"
#include "qlam/syntax.hpp"

namespace qlam {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Maximum deviation accepted by `GateRegistry::declare`.
inline constexpr double kUnitarityTolerance = 1e-9;

/// A named unitary on `arity` qubits. Row and column indices are big-endian
/// bit strings: the first qubit is the most significant bit.
struct GateDef {
    std::string name;
    std::size_t arity = 0;
    Matrix matrix;
};

class GateError : public std::runtime_error {
public:
    enum class Kind { NotPowerOfTwo, NotUnitary, Redefinition, ArityMismatch };

    GateError(Kind kind, std::string message, double max_deviation = 0.0);

    Kind kind() const { return kind_; }
    /// ||U^dagger U - I||_max for NotUnitary.
    double max_deviation() const { return max_deviation_; }

private:
    Kind kind_;
    double max_deviation_;
};

const char* to_string(GateError::Kind k);

/// ||U^dagger U - I||_max.
double unitarity_deviation(const Matrix& u);

/// Builds a matrix from rows; ragged input raises NotPowerOfTwo since the
/// result cannot be a square 2^n matrix.
Matrix matrix_from_rows(const std::vector<std::vector<Complex>>& rows);

/// H, X, Y, Z, S, T, I, CNOT, CZ, SWAP and CCNOT with textbook matrices.
std::vector<GateDef> builtins();

/// Gate constants visible to the checker, evaluator and denotation. Built
/// once, then shared read-only.
class GateRegistry {
public:
    GateRegistry() = default;

    static GateRegistry with_builtins();

    const GateDef& declare(const std::string& name, const Matrix& matrix);

    /// Accepts one `{"name": ..., "matrix": [[[re, im], ...], ...]}` object
    /// or an array of them.
    void load_json(const nlohmann::json& j);

    const GateDef* find(std::string_view name) const;
    const std::map<std::string, GateDef, std::less<>>& gates() const { return gates_; }

private:
    std::map<std::string, GateDef, std::less<>> gates_;
};

/// Basis expansion of `g` on the literal tuple `bits`: the output tuple b'
/// gets amplitude U[b', bits]. Entries below the pruning threshold are
/// omitted.
Superposition apply_gate(const GateDef& g, const std::vector<int>& bits);

/// Big-endian index of a bit tuple.
std::size_t bits_to_index(const std::vector<int>& bits);
std::vector<int> index_to_bits(std::size_t index, std::size_t width);

}  // namespace qlam
