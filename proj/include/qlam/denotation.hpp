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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qlam/typecheck.hpp"
#include "qlam/unitaries.hpp"

namespace qlam {

inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 16;

class DenotationError : public std::runtime_error {
public:
    enum class Kind { DimensionMismatch, EmptyBundle, DimensionCap };
    DenotationError(Kind kind, const std::string& message);
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

const char* to_string(DenotationError::Kind k);

/// Fiber dimension and carrier dimension of a type.
struct BundleSig {
    std::size_t rank = 0;
    std::size_t carrier_dim = 1;
};

/// Throws DimensionCap if a value does not fit in std::size_t.
std::size_t rank_of(const Type& t);
std::size_t carrier_dim(const Type& t);
BundleSig bundle_sig(const Type& t);

/// Squared norm of a unit fiber element measured in the carrier, when it
/// only depends on the type: 1 for Qbit, multiplicative on tensors, and
/// carrier_dim(A) * scale(B) for A -o B with A first-order.
std::optional<double> fiber_norm2(const Type& t);

/// Carrier-level linear map, dst_dim x src_dim.
struct SemMorphism {
    std::size_t src_dim = 1;
    std::size_t dst_dim = 1;
    Matrix matrix;
};

SemMorphism identity(std::size_t dim);
SemMorphism compose(const SemMorphism& g, const SemMorphism& f);
SemMorphism kron(const SemMorphism& f, const SemMorphism& g);

/// From f : C (x) A -> B to C -> Lin(A, B), with g[o*dA + i, c] = f[o, c*dA + i].
SemMorphism curry_carrier(const SemMorphism& f, std::size_t dim_c, std::size_t dim_a, std::size_t dim_b);

/// Evaluation map Lin(A, B) (x) A -> B.
SemMorphism apply_carrier(std::size_t dim_a, std::size_t dim_b);

/// Permutation on the tensor factors with dimensions `dims`: column j of the
/// result is the basis vector whose factor i carries the digit that factor
/// perm[i] carries in j. Used as `premise * exchange(...)` for Exch.
Eigen::PermutationMatrix<Eigen::Dynamic> factor_permutation(const std::vector<std::size_t>& dims,
                                                            const std::vector<std::size_t>& perm);
SemMorphism exchange(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm);

/// g . (v (x) id): fills the first `v.dst_dim` dimensions of g's source with v.
SemMorphism cut(const SemMorphism& v, const SemMorphism& g);

/// Column vector of U flattened row-major, output index most significant.
SemMorphism flatten(const Matrix& u);

/// Compositional interpretation of a derivation. Throws EmptyBundle on
/// rank-0 function types and DimensionCap when a carrier exceeds `cap`.
SemMorphism denote(const Derivation& d, const GateRegistry& gates, std::size_t cap = kDefaultDimensionCap);

SemMorphism denote(const Context& ctx, const Superposition& s, const GateRegistry& gates,
                   std::size_t cap = kDefaultDimensionCap);

/// Amplitude column of a superposition of literal tuples, indexed by the
/// big-endian value of each branch's literals.
Matrix state_column(const Superposition& s);

/// Closed terms t and u have entrywise-equal denotations within kNormTolerance.
bool soundness_check(const TermPtr& t, const TermPtr& u, const GateRegistry& gates);

}  // namespace qlam
