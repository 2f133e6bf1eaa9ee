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

#include "qlam/denotation.hpp"

#include <utility>

#include "qlam/printer.hpp"

namespace qlam {

DenotationError::DenotationError(Kind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

const char* to_string(DenotationError::Kind k) {
    switch (k) {
        case DenotationError::Kind::DimensionMismatch:
            return "DimensionMismatch";
        case DenotationError::Kind::EmptyBundle:
            return "EmptyBundle";
        case DenotationError::Kind::DimensionCap:
            return "DimensionCap";
    }
    return "DenotationError";
}

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b) {
    std::size_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw DenotationError(DenotationError::Kind::DimensionCap, "dimension overflows std::size_t");
    return out;
}

}  // namespace

std::size_t rank_of(const Type& t) {
    switch (t.kind) {
        case TypeKind::Qbit:
            return 2;
        case TypeKind::Tensor:
            return checked_mul(rank_of(*t.left), rank_of(*t.right));
        case TypeKind::Lolli: {
            std::size_t a = rank_of(*t.left);
            std::size_t b = rank_of(*t.right);
            return a == 0 ? 0 : b / a;
        }
    }
    return 0;
}

std::size_t carrier_dim(const Type& t) {
    if (t.is_qbit()) return 2;
    return checked_mul(carrier_dim(*t.left), carrier_dim(*t.right));
}

BundleSig bundle_sig(const Type& t) { return {rank_of(t), carrier_dim(t)}; }

std::optional<double> fiber_norm2(const Type& t) {
    switch (t.kind) {
        case TypeKind::Qbit:
            return 1.0;
        case TypeKind::Tensor: {
            auto l = fiber_norm2(*t.left);
            auto r = fiber_norm2(*t.right);
            if (!l || !r) return std::nullopt;
            return *l * *r;
        }
        case TypeKind::Lolli: {
            if (!is_first_order(*t.left)) return std::nullopt;
            auto r = fiber_norm2(*t.right);
            if (!r) return std::nullopt;
            return static_cast<double>(carrier_dim(*t.left)) * *r;
        }
    }
    return std::nullopt;
}

SemMorphism identity(std::size_t dim) {
    return {dim, dim, Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
}

SemMorphism compose(const SemMorphism& g, const SemMorphism& f) {
    if (g.src_dim != f.dst_dim)
        throw DenotationError(DenotationError::Kind::DimensionMismatch, "compose: inner dimensions differ");
    return {f.src_dim, g.dst_dim, g.matrix * f.matrix};
}

SemMorphism kron(const SemMorphism& f, const SemMorphism& g) {
    const Eigen::Index fr = f.matrix.rows(), fc = f.matrix.cols();
    const Eigen::Index gr = g.matrix.rows(), gc = g.matrix.cols();
    Matrix m(fr * gr, fc * gc);
    for (Eigen::Index i = 0; i < fr; ++i)
        for (Eigen::Index j = 0; j < fc; ++j) m.block(i * gr, j * gc, gr, gc) = f.matrix(i, j) * g.matrix;
    return {checked_mul(f.src_dim, g.src_dim), checked_mul(f.dst_dim, g.dst_dim), std::move(m)};
}

SemMorphism curry_carrier(const SemMorphism& f, std::size_t dim_c, std::size_t dim_a, std::size_t dim_b) {
    if (f.src_dim != checked_mul(dim_c, dim_a) || f.dst_dim != dim_b)
        throw DenotationError(DenotationError::Kind::DimensionMismatch,
                              "curry: source " + std::to_string(f.src_dim) + " is not " + std::to_string(dim_c) +
                                  " x " + std::to_string(dim_a));
    const auto c_n = static_cast<Eigen::Index>(dim_c);
    const auto a_n = static_cast<Eigen::Index>(dim_a);
    const auto b_n = static_cast<Eigen::Index>(dim_b);
    Matrix g(b_n * a_n, c_n);
    for (Eigen::Index o = 0; o < b_n; ++o)
        for (Eigen::Index i = 0; i < a_n; ++i)
            for (Eigen::Index c = 0; c < c_n; ++c) g(o * a_n + i, c) = f.matrix(o, c * a_n + i);
    return {dim_c, checked_mul(dim_b, dim_a), std::move(g)};
}

SemMorphism apply_carrier(std::size_t dim_a, std::size_t dim_b) {
    const auto a_n = static_cast<Eigen::Index>(dim_a);
    const auto b_n = static_cast<Eigen::Index>(dim_b);
    std::size_t src = checked_mul(checked_mul(dim_a, dim_b), dim_a);
    Matrix m = Matrix::Zero(b_n, static_cast<Eigen::Index>(src));
    for (Eigen::Index o = 0; o < b_n; ++o)
        for (Eigen::Index i = 0; i < a_n; ++i) m(o, (o * a_n + i) * a_n + i) = 1.0;
    return {src, dim_b, std::move(m)};
}

Eigen::PermutationMatrix<Eigen::Dynamic> factor_permutation(const std::vector<std::size_t>& dims,
                                                            const std::vector<std::size_t>& perm) {
    const std::size_t n = dims.size();
    std::size_t total = 1;
    for (auto d : dims) total = checked_mul(total, d);
    // Premise factor i has dimension dims[perm[i]].
    std::vector<std::size_t> digits(n);
    Eigen::PermutationMatrix<Eigen::Dynamic> p(static_cast<Eigen::Index>(total));
    for (std::size_t j = 0; j < total; ++j) {
        std::size_t rest = j;
        for (std::size_t f = n; f-- > 0;) {
            digits[f] = rest % dims[f];
            rest /= dims[f];
        }
        std::size_t target = 0;
        for (std::size_t i = 0; i < n; ++i) target = target * dims[perm[i]] + digits[perm[i]];
        p.indices()[static_cast<Eigen::Index>(j)] = static_cast<int>(target);
    }
    return p;
}

SemMorphism exchange(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
    auto p = factor_permutation(dims, perm);
    std::size_t total = static_cast<std::size_t>(p.size());
    return {total, total, p.toDenseMatrix().cast<Complex>()};
}

SemMorphism cut(const SemMorphism& v, const SemMorphism& g) {
    if (v.src_dim != 1 || g.src_dim % v.dst_dim != 0)
        throw DenotationError(DenotationError::Kind::DimensionMismatch, "cut: state does not fit the source");
    const std::size_t rest = g.src_dim / v.dst_dim;
    const auto r_n = static_cast<Eigen::Index>(rest);
    Matrix m = Matrix::Zero(g.matrix.rows(), r_n);
    for (Eigen::Index j = 0; j < v.matrix.rows(); ++j) {
        if (v.matrix(j, 0) == Complex{}) continue;
        m += v.matrix(j, 0) * g.matrix.middleCols(j * r_n, r_n);
    }
    return {rest, g.dst_dim, std::move(m)};
}

SemMorphism flatten(const Matrix& u) {
    const Eigen::Index d = u.cols();
    Matrix col(u.rows() * d, 1);
    for (Eigen::Index o = 0; o < u.rows(); ++o)
        for (Eigen::Index i = 0; i < d; ++i) col(o * d + i, 0) = u(o, i);
    return {1, static_cast<std::size_t>(col.rows()), std::move(col)};
}

namespace {

class Interpreter {
public:
    Interpreter(const GateRegistry& gates, std::size_t cap) : cap_(cap), gates_(gates) {}

    SemMorphism run(const Derivation& d) {
        for (const auto& b : d.context) guard(b.type);
        if (d.type) guard(d.type);
        std::size_t src = context_dim(d.context);

        switch (d.rule) {
            case Rule::Id:
                return identity(carrier_dim(*d.type));
            case Rule::Exch: {
                SemMorphism p = run(*d.premises.at(0));
                std::vector<std::size_t> dims;
                for (const auto& b : d.context) dims.push_back(carrier_dim(*b.type));
                return {src, p.dst_dim, p.matrix * factor_permutation(dims, d.permutation)};
            }
            case Rule::Cut: {
                SemMorphism v = run(*d.premises.at(0));
                SemMorphism g = run(*d.premises.at(1));
                return cut(v, g);
            }
            case Rule::LolliIntro: {
                SemMorphism body = run(*d.premises.at(0));
                return curry_carrier(body, src, carrier_dim(*d.type->left), carrier_dim(*d.type->right));
            }
            case Rule::LolliElim:
                return apply(run(*d.premises.at(0)), run(*d.premises.at(1)), carrier_dim(*d.type));
            case Rule::TensorIntro:
                return kron(run(*d.premises.at(0)), run(*d.premises.at(1)));
            case Rule::TensorElim:
                return run(*d.premises.at(0));
            case Rule::QbitIntro: {
                Matrix col(static_cast<Eigen::Index>(d.amplitudes.size()), 1);
                for (std::size_t i = 0; i < d.amplitudes.size(); ++i)
                    col(static_cast<Eigen::Index>(i), 0) = d.amplitudes[i];
                return {1, d.amplitudes.size(), std::move(col)};
            }
            case Rule::GateIntro: {
                const GateDef* g = gates_.find(d.gate);
                if (g == nullptr)
                    throw DenotationError(DenotationError::Kind::DimensionMismatch, "no matrix for gate #" + d.gate);
                return flatten(g->matrix);
            }
        }
        throw std::logic_error("denote: unknown rule");
    }

private:
    /// apply . (f (x) a) without materializing the evaluation map.
    static SemMorphism apply(const SemMorphism& f, const SemMorphism& a, std::size_t dim_b) {
        const std::size_t dim_a = a.dst_dim;
        if (f.dst_dim != checked_mul(dim_a, dim_b))
            throw DenotationError(DenotationError::Kind::DimensionMismatch, "apply: function carrier mismatch");
        const auto a_n = static_cast<Eigen::Index>(dim_a);
        const auto b_n = static_cast<Eigen::Index>(dim_b);
        const Eigen::Index m = f.matrix.cols(), n = a.matrix.cols();
        Matrix out(b_n, m * n);
        for (Eigen::Index o = 0; o < b_n; ++o) {
            // Row o of the result is sum_i F[o*dA + i, c] * A[i, d] over (c, d).
            Matrix block = f.matrix.middleRows(o * a_n, a_n).transpose() * a.matrix;
            for (Eigen::Index c = 0; c < m; ++c) out.block(o, c * n, 1, n) = block.row(c);
        }
        return {checked_mul(f.src_dim, a.src_dim), dim_b, std::move(out)};
    }

    void guard(const TypePtr& t) {
        std::size_t dim = carrier_dim(*t);
        if (dim > cap_)
            throw DenotationError(DenotationError::Kind::DimensionCap,
                                  "carrier dimension " + std::to_string(dim) + " of '" + pretty(t) +
                                      "' exceeds the cap " + std::to_string(cap_));
        if (t->is_lolli() && rank_of(*t) == 0)
            throw DenotationError(DenotationError::Kind::EmptyBundle,
                                  "'" + pretty(t) + "' is the empty bundle and has no inhabitant");
        if (!t->is_qbit()) {
            guard(t->left);
            guard(t->right);
        }
    }

    std::size_t context_dim(const std::vector<Binding>& ctx) {
        std::size_t dim = 1;
        for (const auto& b : ctx) dim = checked_mul(dim, carrier_dim(*b.type));
        if (dim > cap_)
            throw DenotationError(DenotationError::Kind::DimensionCap,
                                  "context dimension " + std::to_string(dim) + " exceeds the cap " +
                                      std::to_string(cap_));
        return dim;
    }

    std::size_t cap_;
    const GateRegistry& gates_;
};

}  // namespace

SemMorphism denote(const Derivation& d, const GateRegistry& gates, std::size_t cap) {
    return Interpreter(gates, cap).run(d);
}

SemMorphism denote(const Context& ctx, const Superposition& s, const GateRegistry& gates, std::size_t cap) {
    return Interpreter(gates, cap).run(*derive(ctx, s, gates));
}

Matrix state_column(const Superposition& s) {
    std::size_t k = s.empty() ? 0 : s.skeleton().holes();
    Matrix col = Matrix::Zero(Eigen::Index{1} << k, 1);
    for (const auto& [key, e] : s.entries())
        col(static_cast<Eigen::Index>(bits_to_index(literal_bits(e.term))), 0) += e.amplitude;
    return col;
}

bool soundness_check(const TermPtr& t, const TermPtr& u, const GateRegistry& gates) {
    SemMorphism a = denote(Context{}, linearize(t), gates);
    SemMorphism b = denote(Context{}, linearize(u), gates);
    if (a.src_dim != b.src_dim || a.dst_dim != b.dst_dim) return false;
    return (a.matrix - b.matrix).cwiseAbs().maxCoeff() <= kNormTolerance;
}

}  // namespace qlam
