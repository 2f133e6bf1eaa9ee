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

#include "qlam/unitaries.hpp"

#include <cmath>
#include <sstream>

namespace qlam {

GateError::GateError(Kind kind, std::string message, double max_deviation)
    : std::runtime_error(std::move(message)), kind_(kind), max_deviation_(max_deviation) {}

const char* to_string(GateError::Kind k) {
    switch (k) {
        case GateError::Kind::NotPowerOfTwo:
            return "NotPowerOfTwo";
        case GateError::Kind::NotUnitary:
            return "NotUnitary";
        case GateError::Kind::Redefinition:
            return "Redefinition";
        case GateError::Kind::ArityMismatch:
            return "ArityMismatch";
    }
    return "GateError";
}

double unitarity_deviation(const Matrix& u) {
    Matrix d = u.adjoint() * u - Matrix::Identity(u.cols(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

Matrix matrix_from_rows(const std::vector<std::vector<Complex>>& rows) {
    std::size_t n = rows.size();
    for (const auto& r : rows) {
        if (r.size() != n) {
            std::ostringstream os;
            os << "gate matrix is not square: " << n << " rows, a row of length " << r.size();
            throw GateError(GateError::Kind::NotPowerOfTwo, os.str());
        }
    }
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
    return m;
}

namespace {

GateDef def(std::string name, const Matrix& m) {
    std::size_t arity = 0;
    while ((std::size_t{1} << arity) < static_cast<std::size_t>(m.rows())) ++arity;
    return GateDef{std::move(name), arity, m};
}

Matrix controlled(const Matrix& u) {
    Eigen::Index n = u.rows();
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    m.topLeftCorner(n, n) = Matrix::Identity(n, n);
    m.bottomRightCorner(n, n) = u;
    return m;
}

}  // namespace

std::vector<GateDef> builtins() {
    const Complex i(0.0, 1.0);
    const double r = 1.0 / std::sqrt(2.0);
    Matrix id = Matrix::Identity(2, 2);
    Matrix h(2, 2), x(2, 2), y(2, 2), z(2, 2), s(2, 2), t(2, 2), swap(4, 4);
    h << r, r, r, -r;
    x << 0, 1, 1, 0;
    y << 0, -i, i, 0;
    z << 1, 0, 0, -1;
    s << 1, 0, 0, i;
    t << 1, 0, 0, std::polar(1.0, M_PI / 4);
    swap << 1, 0, 0, 0,  //
        0, 0, 1, 0,      //
        0, 1, 0, 0,      //
        0, 0, 0, 1;
    Matrix cnot = controlled(x);
    return {def("I", id),        def("H", h),       def("X", x),       def("Y", y),
            def("Z", z),         def("S", s),       def("T", t),       def("CNOT", cnot),
            def("CZ", controlled(z)), def("SWAP", swap), def("CCNOT", controlled(cnot))};
}

GateRegistry GateRegistry::with_builtins() {
    GateRegistry reg;
    for (auto& g : builtins()) reg.declare(g.name, g.matrix);
    return reg;
}

const GateDef& GateRegistry::declare(const std::string& name, const Matrix& matrix) {
    if (gates_.count(name) != 0)
        throw GateError(GateError::Kind::Redefinition, "gate #" + name + " is already defined");
    auto n = static_cast<std::size_t>(matrix.rows());
    if (matrix.rows() != matrix.cols() || n < 2 || (n & (n - 1)) != 0) {
        std::ostringstream os;
        os << "gate #" << name << ": a " << matrix.rows() << "x" << matrix.cols()
           << " matrix is not 2^n x 2^n for any n >= 1";
        throw GateError(GateError::Kind::NotPowerOfTwo, os.str());
    }
    double dev = unitarity_deviation(matrix);
    if (!(dev <= kUnitarityTolerance)) {
        std::ostringstream os;
        os << "gate #" << name << " is not unitary: max |U^dagger U - I| = " << dev;
        throw GateError(GateError::Kind::NotUnitary, os.str(), dev);
    }
    return gates_.emplace(name, def(name, matrix)).first->second;
}

void GateRegistry::load_json(const nlohmann::json& j) {
    if (j.is_array()) {
        for (const auto& item : j) load_json(item);
        return;
    }
    std::string name = j.at("name").get<std::string>();
    std::vector<std::vector<Complex>> rows;
    for (const auto& row : j.at("matrix")) {
        std::vector<Complex> r;
        for (const auto& entry : row) {
            if (entry.is_number())
                r.emplace_back(entry.get<double>(), 0.0);
            else
                r.emplace_back(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
        rows.push_back(std::move(r));
    }
    declare(name, matrix_from_rows(rows));
}

const GateDef* GateRegistry::find(std::string_view name) const {
    auto it = gates_.find(name);
    return it == gates_.end() ? nullptr : &it->second;
}

std::size_t bits_to_index(const std::vector<int>& bits) {
    std::size_t idx = 0;
    for (int b : bits) idx = (idx << 1) | static_cast<std::size_t>(b & 1);
    return idx;
}

std::vector<int> index_to_bits(std::size_t index, std::size_t width) {
    std::vector<int> bits(width);
    for (std::size_t k = 0; k < width; ++k) bits[width - 1 - k] = static_cast<int>((index >> k) & 1);
    return bits;
}

Superposition apply_gate(const GateDef& g, const std::vector<int>& bits) {
    if (bits.size() != g.arity) {
        std::ostringstream os;
        os << "gate #" << g.name << " expects " << g.arity << " qubits, got " << bits.size();
        throw GateError(GateError::Kind::ArityMismatch, os.str());
    }
    auto col = static_cast<Eigen::Index>(bits_to_index(bits));
    SuperpositionBuilder out;
    for (Eigen::Index row = 0; row < g.matrix.rows(); ++row) {
        Complex a = g.matrix(row, col);
        if (std::abs(a) < kPruneThreshold) continue;
        std::vector<TermPtr> lits;
        for (int b : index_to_bits(static_cast<std::size_t>(row), g.arity)) lits.push_back(make_qubit(b));
        out.add(make_tensor(lits), a);
    }
    return out.build();
}

}  // namespace qlam
