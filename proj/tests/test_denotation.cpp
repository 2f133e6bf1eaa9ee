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

#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "properties.hpp"
#include "qlam/denotation.hpp"
#include "qlam/parser.hpp"
#include "qlam/printer.hpp"
#include "qlam/typecheck.hpp"

namespace qlam {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

const GateRegistry& gates() {
    static const GateRegistry g = GateRegistry::with_builtins();
    return g;
}

std::size_t rank(const char* t) { return rank_of(*parse_type(t)); }
std::size_t dim(const char* t) { return carrier_dim(*parse_type(t)); }

SemMorphism closed(const std::string& text) { return denote(Context{}, linearize(parse_term(text)), gates()); }

Matrix column(std::initializer_list<Complex> xs) {
    Matrix m(static_cast<Eigen::Index>(xs.size()), 1);
    Eigen::Index i = 0;
    for (Complex x : xs) m(i++, 0) = x;
    return m;
}

double diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
    return (a - b).cwiseAbs().maxCoeff();
}

TEST(Rank, Table) {
    EXPECT_EQ(rank("Qbit -o Qbit"), 1u);
    EXPECT_EQ(rank("Qbit -o Qbit (x) Qbit"), 2u);
    EXPECT_EQ(rank("Qbit (x) Qbit -o Qbit"), 0u);
    EXPECT_EQ(rank("(Qbit -o Qbit) (x) Qbit"), 2u);
    EXPECT_EQ(rank("(Qbit (x) Qbit -o Qbit) -o Qbit"), 0u);
    for (std::size_t n = 1; n <= 10; ++n) EXPECT_EQ(rank_of(*qbit_power(n)), std::size_t{1} << n);
}

TEST(CarrierDim, Table) {
    EXPECT_EQ(dim("Qbit"), 2u);
    EXPECT_EQ(dim("Qbit -o Qbit"), 4u);
    EXPECT_EQ(dim("(Qbit -o Qbit) (x) Qbit"), 8u);
    EXPECT_EQ(dim("Qbit (x) Qbit -o Qbit"), 8u);
    BundleSig s = bundle_sig(*parse_type("Qbit -o Qbit (x) Qbit"));
    EXPECT_EQ(s.rank, 2u);
    EXPECT_EQ(s.carrier_dim, 8u);
}

TEST(CarrierDim, OverflowIsReported) {
    TypePtr t = qbit_type();
    for (int i = 0; i < 7; ++i) t = lolli_type(t, t);
    try {
        carrier_dim(*t);
        FAIL();
    } catch (const DenotationError& e) {
        EXPECT_EQ(e.kind(), DenotationError::Kind::DimensionCap);
    }
}

TEST(FiberNorm, Scales) {
    EXPECT_EQ(fiber_norm2(*parse_type("Qbit")), 1.0);
    EXPECT_EQ(fiber_norm2(*parse_type("Qbit -o Qbit")), 2.0);
    EXPECT_EQ(fiber_norm2(*parse_type("Qbit (x) Qbit -o Qbit (x) Qbit")), 4.0);
    EXPECT_EQ(fiber_norm2(*parse_type("(Qbit -o Qbit) (x) Qbit")), 2.0);
    EXPECT_FALSE(fiber_norm2(*parse_type("(Qbit -o Qbit) -o Qbit")));
}

TEST(Denote, BasisVector) { EXPECT_EQ(closed("|0>").matrix, column({1, 0})); }

TEST(Denote, HadamardIsItsFlattening) {
    SemMorphism h = closed("#H");
    Matrix expected = column({kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2});
    EXPECT_LE(diff(h.matrix, expected), 1e-15);
    EXPECT_NEAR(h.matrix.squaredNorm(), *fiber_norm2(*parse_type("Qbit -o Qbit")), 1e-12);
    EXPECT_LE(diff(closed("\\x:Qbit. #H x").matrix, expected), 1e-12);
}

TEST(Denote, Deutsch) {
    SemMorphism d = closed(
        "(\\uf:Qbit (x) Qbit -o Qbit (x) Qbit.\n"
        "  let x (x) y : Qbit (x) Qbit = uf ((#H |0>) (x) (#H |1>)) in (#H x) (x) y) #CNOT");
    EXPECT_LE(diff(d.matrix, column({0, 0, kInvSqrt2, -kInvSqrt2})), 1e-9);
}

TEST(Denote, OpenJudgmentIsTheCircuitMatrix) {
    Context ctx({{"a", qbit_type()}, {"b", qbit_type()}});
    SemMorphism m = denote(ctx, linearize(parse_term("#CNOT (a (x) b)")), gates());
    EXPECT_LE(diff(m.matrix, test::oracle_gate("CNOT")), 1e-15);
    SemMorphism swapped = denote(ctx, linearize(parse_term("b (x) a")), gates());
    EXPECT_LE(diff(swapped.matrix, test::oracle_gate("SWAP")), 1e-15);
}

TEST(Denote, EmptyBundleAndCap) {
    try {
        closed("\\f:Qbit (x) Qbit -o Qbit. \\x:Qbit (x) Qbit. f x");
        FAIL();
    } catch (const DenotationError& e) {
        EXPECT_EQ(e.kind(), DenotationError::Kind::EmptyBundle);
    }
    try {
        denote(Context{}, linearize(parse_term("#CNOT")), gates(), 8);
        FAIL();
    } catch (const DenotationError& e) {
        EXPECT_EQ(e.kind(), DenotationError::Kind::DimensionCap);
    }
    EXPECT_NO_THROW(denote(Context{}, linearize(parse_term("#CNOT")), gates(), 16));
}

TEST(Denote, FromDerivation) {
    Superposition s = linearize(parse_term("(1/sqrt(2)) * (|0> + |1>)"));
    SemMorphism m = denote(*derive({}, s, gates()), gates());
    EXPECT_LE(diff(m.matrix, column({kInvSqrt2, kInvSqrt2})), 1e-15);
}

TEST(Curry, IdentityOnUnitGivesFlattenedIdentity) {
    SemMorphism c = curry_carrier(identity(2), 1, 2, 2);
    EXPECT_EQ(c.src_dim, 1u);
    EXPECT_EQ(c.dst_dim, 4u);
    EXPECT_EQ(c.matrix, column({1, 0, 0, 1}));
    EXPECT_EQ(c.matrix, flatten(Matrix::Identity(2, 2)).matrix);
}

TEST(Curry, RoundTripsUnitaryExactly) {
    test::Rng rng(5);
    SemMorphism f{4, 4, test::random_unitary(rng, 4)};
    for (auto [dc, da] : {std::pair<std::size_t, std::size_t>{1, 4}, {2, 2}, {4, 1}}) {
        SemMorphism g = curry_carrier(f, dc, da, 4);
        SemMorphism back = compose(apply_carrier(da, 4), kron(g, identity(da)));
        EXPECT_EQ(back.matrix, f.matrix);
    }
}

TEST(Curry, DimensionMismatch) {
    try {
        curry_carrier(identity(4), 3, 2, 4);
        FAIL();
    } catch (const DenotationError& e) {
        EXPECT_EQ(e.kind(), DenotationError::Kind::DimensionMismatch);
    }
    EXPECT_THROW(compose(identity(2), identity(3)), DenotationError);
}

TEST(Apply, Examples) {
    Matrix e0 = column({1, 0});
    SemMorphism ap = apply_carrier(2, 2);
    EXPECT_EQ(ap.src_dim, 8u);
    Matrix h = test::oracle_gate("H");
    Matrix fh = flatten(h).matrix;
    EXPECT_LE(diff(ap.matrix * kron({1, 4, fh}, {1, 2, e0}).matrix, h * e0), 1e-15);
    Matrix fi = flatten(Matrix::Identity(2, 2)).matrix;
    for (int b = 0; b < 2; ++b) {
        Matrix v = Matrix::Zero(2, 1);
        v(b, 0) = 1;
        EXPECT_EQ(ap.matrix * kron({1, 4, fi}, {1, 2, v}).matrix, v);
    }
    test::Rng rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix f1 = Matrix::Random(4, 1), f2 = Matrix::Random(4, 1), x = Matrix::Random(2, 1);
        Complex a = rng.complex(), b = rng.complex();
        Matrix lhs = ap.matrix * kron({1, 4, a * f1 + b * f2}, {1, 2, x}).matrix;
        Matrix rhs = a * (ap.matrix * kron({1, 4, f1}, {1, 2, x}).matrix) +
                     b * (ap.matrix * kron({1, 4, f2}, {1, 2, x}).matrix);
        EXPECT_LE(diff(lhs, rhs), 1e-12);
    }
}

TEST(Exchange, PermutesFactors) {
    SemMorphism p = exchange({2, 3}, {1, 0});
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 3; ++b) {
            Matrix in = Matrix::Zero(6, 1), out = Matrix::Zero(6, 1);
            in(a * 3 + b, 0) = 1;
            out(b * 2 + a, 0) = 1;
            EXPECT_EQ(p.matrix * in, out);
        }
    EXPECT_LE(diff(p.matrix.adjoint() * p.matrix, Matrix::Identity(6, 6)), 0.0);
    SemMorphism cyc = exchange({2, 2, 2}, {2, 0, 1});
    EXPECT_LE(diff(cyc.matrix.adjoint() * cyc.matrix, Matrix::Identity(8, 8)), 0.0);
    EXPECT_EQ(exchange({2, 2}, {0, 1}).matrix, Matrix::Identity(4, 4));
}

TEST(Cut, FillsFirstFactor) {
    SemMorphism g{4, 4, test::oracle_gate("CNOT")};
    SemMorphism v{1, 2, column({0, 1})};
    SemMorphism c = cut(v, g);
    EXPECT_EQ(c.src_dim, 2u);
    EXPECT_EQ(c.matrix, g.matrix * kron(v, identity(2)).matrix);
    EXPECT_THROW(cut(SemMorphism{1, 3, column({1, 0, 0})}, g), DenotationError);
}

TEST(StateColumn, BigEndian) {
    Matrix c = state_column(linearize(parse_term("(0.6) * (|1> (x) |0>) + (0.8) * (|0> (x) |1>)")));
    EXPECT_EQ(c, column({0, 0.8, 0.6, 0}));
}

TEST(Soundness, Examples) {
    EXPECT_TRUE(soundness_check(parse_term("(\\x:Qbit. x) |0>"), parse_term("|0>"), gates()));
    EXPECT_TRUE(soundness_check(parse_term("#H |0>"), parse_term("(1/sqrt(2)) * (|0> + |1>)"), gates()));
    EXPECT_TRUE(soundness_check(
        parse_term("(\\uf:Qbit (x) Qbit -o Qbit (x) Qbit. let x (x) y : Qbit (x) Qbit = uf ((#H |0>) (x) (#H |1>)) in "
                   "(#H x) (x) y) #CNOT"),
        parse_term("|1> (x) ((1/sqrt(2))*|0> + (-1/sqrt(2))*|1>)"), gates()));
    EXPECT_FALSE(soundness_check(parse_term("#H |0>"), parse_term("#H |1>"), gates()));
    EXPECT_THROW(soundness_check(parse_term("|0> + |1>"), parse_term("|0>"), gates()), TypeError);
}

TEST(Corpus, InhabitedTypesHavePositiveRank) {
    for (const TermPtr& t : test::sample_corpus(3, 200)) {
        TypePtr type = infer_term(Context{}, t, gates());
        EXPECT_GE(rank_of(*type), 1u) << pretty(type);
    }
}

}  // namespace
}  // namespace qlam
