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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlam/syntax.hpp"

namespace qlam {

/// Amplitudes with modulus below this are dropped.
inline constexpr double kPruneThreshold = 1e-12;
/// Tolerance for normalization checks and numeric equality.
inline constexpr double kNormTolerance = 1e-9;

/// Raised when the basis terms of a sum do not share a skeleton.
class CongruenceError : public std::runtime_error {
public:
    CongruenceError(std::string first, std::string second);

    const std::string& first_skeleton() const { return first_; }
    const std::string& second_skeleton() const { return second_; }

private:
    std::string first_;
    std::string second_;
};

/// A basis term with every qubit literal replaced by a hole.
struct Skeleton {
    TermPtr term;

    std::string text() const;
    /// Number of holes, i.e. literal positions.
    std::size_t holes() const;
};

Skeleton skeleton_of(const TermPtr& basis);
bool operator==(const Skeleton& a, const Skeleton& b);

/// Literal values of a basis term in left-to-right (pre-order) position
/// order; the positions are the holes of its skeleton.
std::vector<int> literal_bits(const TermPtr& basis);

/// A finite linear combination of congruent basis terms, keyed and ordered
/// by the printed alpha-canonical form. Each entry keeps the first term added
/// under its key, so user binder names survive.
class Superposition {
public:
    struct Entry {
        TermPtr term;
        Complex amplitude;
    };
    using Map = std::map<std::string, Entry>;

    Superposition() = default;

    /// `basis` must be sum-free; it is canonicalised here.
    static Superposition of(const TermPtr& basis, Complex amplitude = 1.0);

    const Map& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Shared skeleton; requires a non-empty superposition.
    const Skeleton& skeleton() const;

    /// Amplitude for the alpha-class of `basis`, 0 when absent.
    Complex amplitude_of(const TermPtr& basis) const;

    /// The term `a1 * b1 + a2 * b2 + ...` in key order; unit amplitudes are
    /// left implicit.
    TermPtr embed() const;

    Superposition scaled(Complex factor) const;

private:
    friend class SuperpositionBuilder;

    Map entries_;
    std::optional<Skeleton> skeleton_;
};

/// Accumulates weighted basis terms, merging alpha-equal ones.
class SuperpositionBuilder {
public:
    void add(const TermPtr& basis, Complex amplitude);
    void add(const Superposition& s, Complex factor = 1.0);

    /// Prunes near-zero amplitudes and checks congruence.
    Superposition build() const;

private:
    Superposition::Map acc_;
};

/// Normal form of `t` modulo the vector-space laws on terms: sums and
/// scalars are pulled out of tensors, applications and abstractions.
Superposition linearize(const TermPtr& t);

double norm2(const Superposition& s);

enum class CompareMode { Strict, GlobalPhase };

/// Entrywise comparison; a key missing on one side counts as amplitude 0.
bool super_eq(const Superposition& a, const Superposition& b, CompareMode mode, double tol);

/// `[{"term": ..., "re": ..., "im": ...}, ...]` in canonical key order.
nlohmann::json to_json(const Superposition& s);
Superposition superposition_from_json(const nlohmann::json& j);

}  // namespace qlam
