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

#include "qlam/printer.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "overloaded.hpp"

namespace qlam {

using detail::overloaded;

namespace {

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string ten_digits(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

template <class Fmt>
std::string complex_text(Complex c, Fmt fmt) {
    double re = c.real(), im = c.imag();
    if (im == 0.0) return fmt(re);
    if (re == 0.0) return fmt(im) + "i";
    std::string out = fmt(re);
    if (std::signbit(im))
        out += "-" + fmt(-im);
    else
        out += "+" + fmt(im);
    return out + "i";
}

// Precedence levels, loosest first.
constexpr int kLam = 0;
constexpr int kSum = 1;
constexpr int kScale = 2;
constexpr int kTensor = 3;
constexpr int kApp = 4;
constexpr int kAtom = 5;

int precedence(const Term& t) {
    return std::visit(overloaded{
                          [](const node::Lam&) { return kLam; },
                          [](const node::Sum&) { return kSum; },
                          [](const node::Scale&) { return kScale; },
                          [](const node::Pair&) { return kTensor; },
                          [](const node::App&) { return kApp; },
                          [](const auto&) { return kAtom; },
                      },
                      t.node);
}

void print_type(const Type& t, int level, std::string& out) {
    // level 0: anything; 1: tensor operand (left); 2: atom
    switch (t.kind) {
        case TypeKind::Qbit:
            out += "Qbit";
            return;
        case TypeKind::Lolli:
            if (level > 0) out += "(";
            print_type(*t.left, 1, out);
            out += " -o ";
            print_type(*t.right, 0, out);
            if (level > 0) out += ")";
            return;
        case TypeKind::Tensor:
            if (level > 1) out += "(";
            print_type(*t.left, 1, out);
            out += " (x) ";
            print_type(*t.right, 2, out);
            if (level > 1) out += ")";
            return;
    }
}

void print_pattern(const Pattern& p, bool nested_right, std::string& out) {
    if (p.is_var()) {
        out += p.name;
        return;
    }
    if (nested_right) out += "(";
    print_pattern(*p.left, false, out);
    out += " (x) ";
    print_pattern(*p.right, true, out);
    if (nested_right) out += ")";
}

// `rightmost` is true when nothing follows this term before the closing
// parenthesis (or end of input) that encloses it, so a lambda may extend
// to the right without brackets.
void print_term(const TermPtr& t, int level, bool rightmost, std::string& out) {
    int own = precedence(*t);
    bool parens = own == kLam ? (level > kLam && !rightmost) : own < level;
    if (parens) {
        out += "(";
        print_term(t, kLam, true, out);
        out += ")";
        return;
    }
    std::visit(overloaded{
                   [&](const node::Var& v) { out += v.name; },
                   [&](const node::Qubit& q) { out += q.bit ? "|1>" : "|0>"; },
                   [&](const node::Gate& g) { out += "#" + g.name; },
                   [&](const node::Hole&) { out += "_"; },
                   [&](const node::Lam& l) {
                       out += "\\";
                       print_pattern(*l.pattern, false, out);
                       out += ":";
                       print_type(*l.annot, 0, out);
                       out += ". ";
                       print_term(l.body, kLam, true, out);
                   },
                   [&](const node::Sum& s) {
                       print_term(s.left, kSum, false, out);
                       out += " + ";
                       print_term(s.right, kScale, rightmost, out);
                   },
                   [&](const node::Scale& s) {
                       out += "(" + format_scalar(s.coeff) + ") * ";
                       print_term(s.body, kScale, rightmost, out);
                   },
                   [&](const node::Pair& p) {
                       print_term(p.left, kTensor, false, out);
                       out += " (x) ";
                       print_term(p.right, kApp, rightmost, out);
                   },
                   [&](const node::App& a) {
                       print_term(a.fun, kApp, false, out);
                       out += " ";
                       print_term(a.arg, kAtom, rightmost, out);
                   },
               },
               t->node);
}

}  // namespace

std::string pretty(const TermPtr& t) {
    std::string out;
    print_term(t, kLam, true, out);
    return out;
}

std::string pretty(const TypePtr& t) {
    std::string out;
    print_type(*t, 0, out);
    return out;
}

std::string pretty(const PatternPtr& p) {
    std::string out;
    print_pattern(*p, false, out);
    return out;
}

std::string format_scalar(Complex c) { return complex_text(c, shortest); }

std::string format_amplitude(Complex c) {
    double re = std::abs(c.real()) < 1e-12 ? 0.0 : c.real();
    double im = std::abs(c.imag()) < 1e-12 ? 0.0 : c.imag();
    return complex_text(Complex(re, im), ten_digits);
}

}  // namespace qlam
