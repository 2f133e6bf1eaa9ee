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

#include "qlam/parser.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <utility>

namespace qlam {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i != 0) out += ", ";
        out += expected[i];
    }
    return out;
}

std::string describe(int line, int column, const std::vector<std::string>& expected,
                     const std::string& found) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": expected ";
    if (expected.size() == 1)
        os << expected.front();
    else
        os << "one of {" << join_expected(expected) << "}";
    os << ", found " << found;
    return os.str();
}

enum class Tok {
    Ident,
    Number,
    Backslash,
    Colon,
    Dot,
    LParen,
    RParen,
    Tensor,
    Lolli,
    Ket0,
    Ket1,
    GateName,
    Plus,
    Minus,
    Star,
    Slash,
    Equals,
    Semicolon,
    LBracket,
    RBracket,
    Comma,
    Caret,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::string show(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    char peek(std::size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
            if (peek() == '-' && peek(1) == '-') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            return;
        }
    }

    Token next() {
        int line = line_, col = col_;
        auto tok = [&](Tok k, std::size_t n) {
            std::string text(src_.substr(pos_, n));
            advance(n);
            return Token{k, std::move(text), line, col};
        };
        char c = peek();
        if (ident_start(c)) {
            std::size_t n = 1;
            while (ident_char(peek(n))) ++n;
            return tok(Tok::Ident, n);
        }
        if (digit(c)) {
            std::size_t n = 1;
            while (digit(peek(n))) ++n;
            if (peek(n) == '.' && digit(peek(n + 1))) {
                ++n;
                while (digit(peek(n))) ++n;
            }
            if (peek(n) == 'e' || peek(n) == 'E') {
                std::size_t m = n + 1;
                if (peek(m) == '+' || peek(m) == '-') ++m;
                if (digit(peek(m))) {
                    while (digit(peek(m))) ++m;
                    n = m;
                }
            }
            return tok(Tok::Number, n);
        }
        switch (c) {
            case '\\':
                return tok(Tok::Backslash, 1);
            case ':':
                return tok(Tok::Colon, 1);
            case '.':
                return tok(Tok::Dot, 1);
            case '(':
                if (peek(1) == 'x' && peek(2) == ')') return tok(Tok::Tensor, 3);
                return tok(Tok::LParen, 1);
            case ')':
                return tok(Tok::RParen, 1);
            case '-':
                if (peek(1) == 'o') return tok(Tok::Lolli, 2);
                return tok(Tok::Minus, 1);
            case '|':
                if ((peek(1) == '0' || peek(1) == '1') && peek(2) == '>')
                    return tok(peek(1) == '0' ? Tok::Ket0 : Tok::Ket1, 3);
                throw ParseError(line, col, {"'|0>'", "'|1>'"}, "'|'");
            case '#': {
                if (!ident_start(peek(1))) throw ParseError(line, col + 1, {"gate name"}, "'#'");
                std::size_t n = 2;
                while (ident_char(peek(n))) ++n;
                return tok(Tok::GateName, n);
            }
            case '+':
                return tok(Tok::Plus, 1);
            case '*':
                return tok(Tok::Star, 1);
            case '/':
                return tok(Tok::Slash, 1);
            case '=':
                return tok(Tok::Equals, 1);
            case ';':
                return tok(Tok::Semicolon, 1);
            case '[':
                return tok(Tok::LBracket, 1);
            case ']':
                return tok(Tok::RBracket, 1);
            case ',':
                return tok(Tok::Comma, 1);
            case '^':
                return tok(Tok::Caret, 1);
            default:
                break;
        }
        throw ParseError(line, col, {"a token"}, "'" + std::string(1, c) + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words{"let", "in", "def", "gate"};
    return words;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    TermPtr whole_term() {
        TermPtr t = term();
        expect_end();
        return t;
    }

    TypePtr whole_type() {
        TypePtr t = type();
        expect_end();
        return t;
    }

    Complex whole_scalar() {
        Complex c = scalar();
        expect_end();
        return c;
    }

    Program program() {
        Program prog;
        for (;;) {
            if (at_word("gate")) {
                prog.gates.push_back(gate_decl());
            } else if (at_word("def")) {
                prog.defs.push_back(definition());
            } else {
                break;
            }
        }
        if (cur().kind != Tok::End) {
            prog.main = term();
            if (cur().kind == Tok::Semicolon) take();
        }
        expect_end();
        return prog;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t k) const {
        std::size_t i = pos_ + k;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    Token take() {
        Token t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw ParseError(cur().line, cur().column, std::move(expected), show(cur()));
    }

    Token expect(Tok k, const char* what) {
        if (cur().kind != k) fail({what});
        return take();
    }

    void expect_end() {
        if (cur().kind != Tok::End) fail({"end of input"});
    }

    bool at_word(const char* w) const { return cur().kind == Tok::Ident && cur().text == w; }

    static SourceLoc loc_of(const Token& t) { return {t.line, t.column}; }

    // --- types -----------------------------------------------------------

    TypePtr type() {
        TypePtr left = tensor_type_expr();
        if (cur().kind == Tok::Lolli) {
            take();
            return lolli_type(left, type());
        }
        return left;
    }

    TypePtr tensor_type_expr() {
        TypePtr t = type_atom();
        while (cur().kind == Tok::Tensor) {
            take();
            t = tensor_type(t, type_atom());
        }
        return t;
    }

    TypePtr type_atom() {
        if (at_word("Qbit") || at_word("Q")) {
            take();
            if (cur().kind == Tok::Caret) {
                take();
                Token n = expect(Tok::Number, "exponent");
                if (n.text.find_first_not_of("0123456789") != std::string::npos)
                    throw ParseError(n.line, n.column, {"positive integer exponent"}, show(n));
                long k = std::strtol(n.text.c_str(), nullptr, 10);
                if (k < 1 || k > 64)
                    throw ParseError(n.line, n.column, {"exponent between 1 and 64"}, show(n));
                return qbit_power(static_cast<std::size_t>(k));
            }
            return qbit_type();
        }
        if (cur().kind == Tok::LParen) {
            take();
            TypePtr t = type();
            expect(Tok::RParen, "')'");
            return t;
        }
        fail({"'Qbit'", "'('"});
    }

    // --- patterns --------------------------------------------------------

    PatternPtr pattern() {
        PatternPtr p = pattern_atom();
        while (cur().kind == Tok::Tensor) {
            SourceLoc loc = loc_of(cur());
            take();
            p = pair_pattern(p, pattern_atom(), loc);
        }
        return p;
    }

    PatternPtr pattern_atom() {
        if (cur().kind == Tok::Ident && reserved_words().count(cur().text) == 0) {
            Token t = take();
            return var_pattern(t.text, loc_of(t));
        }
        if (cur().kind == Tok::LParen) {
            take();
            PatternPtr p = pattern();
            expect(Tok::RParen, "')'");
            return p;
        }
        fail({"identifier", "'('"});
    }

    void check_distinct(const PatternPtr& p, const Token& at) {
        auto vars = pattern_vars(*p);
        std::set<std::string> seen;
        for (const auto& v : vars) {
            if (!seen.insert(v).second)
                throw ParseError(at.line, at.column, {"distinct pattern variables"},
                                 "repeated '" + v + "'");
        }
    }

    // --- scalars ---------------------------------------------------------

    double number() {
        Token t = expect(Tok::Number, "number");
        return std::strtod(t.text.c_str(), nullptr);
    }

    // magnitude ['i'], where magnitude is NUMBER or NUMBER '/' 'sqrt' '(' NUMBER ')'
    std::pair<double, bool> component() {
        double v = number();
        if (cur().kind == Tok::Slash) {
            take();
            if (!at_word("sqrt")) fail({"'sqrt'"});
            take();
            expect(Tok::LParen, "'('");
            Token arg = cur();
            double d = number();
            if (!(d > 0.0)) throw ParseError(arg.line, arg.column, {"positive number"}, show(arg));
            expect(Tok::RParen, "')'");
            v /= std::sqrt(d);
        }
        bool imag = false;
        if (at_word("i")) {
            take();
            imag = true;
        }
        return {v, imag};
    }

    Complex scalar() {
        double sign = 1.0;
        if (cur().kind == Tok::Minus || cur().kind == Tok::Plus) {
            if (take().kind == Tok::Minus) sign = -1.0;
        }
        auto [v, imag] = component();
        Complex c = imag ? Complex(0.0, sign * v) : Complex(sign * v, 0.0);
        if (cur().kind == Tok::Plus || cur().kind == Tok::Minus) {
            if (imag) fail({"')'"});
            double s2 = take().kind == Tok::Minus ? -1.0 : 1.0;
            Token at = cur();
            auto [w, imag2] = component();
            if (!imag2) throw ParseError(at.line, at.column, {"imaginary part ending in 'i'"}, show(at));
            c += Complex(0.0, s2 * w);
        }
        return c;
    }

    bool scalar_follows_lparen() const {
        if (cur().kind != Tok::LParen) return false;
        Tok k = ahead(1).kind;
        return k == Tok::Number || k == Tok::Minus || k == Tok::Plus;
    }

    // --- terms -----------------------------------------------------------

    bool starts_atom() const {
        switch (cur().kind) {
            case Tok::Ident:
                return reserved_words().count(cur().text) == 0 || cur().text == "let";
            case Tok::Ket0:
            case Tok::Ket1:
            case Tok::GateName:
            case Tok::Backslash:
                return true;
            case Tok::LParen:
                return !scalar_follows_lparen();
            default:
                return false;
        }
    }

    TermPtr term() { return sum(); }

    TermPtr sum() {
        TermPtr t = scaled();
        while (cur().kind == Tok::Plus) {
            SourceLoc loc = loc_of(cur());
            take();
            t = make_sum(t, scaled(), loc);
        }
        return t;
    }

    TermPtr scaled() {
        if (scalar_follows_lparen()) {
            SourceLoc loc = loc_of(cur());
            take();
            Complex c = scalar();
            expect(Tok::RParen, "')'");
            expect(Tok::Star, "'*'");
            return make_scale(c, scaled(), loc);
        }
        return tensor();
    }

    TermPtr tensor() {
        TermPtr t = app();
        while (cur().kind == Tok::Tensor) {
            SourceLoc loc = loc_of(cur());
            take();
            t = make_pair(t, app(), loc);
        }
        return t;
    }

    TermPtr app() {
        TermPtr t = atom();
        while (starts_atom()) {
            SourceLoc loc = loc_of(cur());
            t = make_app(t, atom(), loc);
        }
        return t;
    }

    TermPtr atom() {
        const Token& t = cur();
        SourceLoc loc = loc_of(t);
        switch (t.kind) {
            case Tok::Ident:
                if (t.text == "let") return let_expr();
                if (reserved_words().count(t.text) != 0) break;
                return make_var(take().text, loc);
            case Tok::Ket0:
                take();
                return make_qubit(0, loc);
            case Tok::Ket1:
                take();
                return make_qubit(1, loc);
            case Tok::GateName:
                return make_gate(take().text.substr(1), loc);
            case Tok::Backslash:
                return lambda();
            case Tok::LParen: {
                if (scalar_follows_lparen()) break;
                take();
                TermPtr inner = term();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                break;
        }
        fail({"identifier", "'|0>'", "'|1>'", "gate constant", "'\\'", "'let'", "'('"});
    }

    TermPtr lambda() {
        Token start = take();
        PatternPtr p = pattern();
        check_distinct(p, start);
        expect(Tok::Colon, "':'");
        TypePtr annot = type();
        expect(Tok::Dot, "'.'");
        TermPtr body = term();
        return make_lam(p, annot, body, loc_of(start));
    }

    // let p : T = t in u  ==>  (\p:T. u) t
    TermPtr let_expr() {
        Token start = take();
        PatternPtr p = pattern();
        check_distinct(p, start);
        expect(Tok::Colon, "':'");
        TypePtr annot = type();
        expect(Tok::Equals, "'='");
        TermPtr bound = term();
        if (!at_word("in")) fail({"'in'"});
        take();
        TermPtr body = term();
        return make_app(make_lam(p, annot, body, loc_of(start)), bound, loc_of(start));
    }

    // --- declarations ----------------------------------------------------

    GateDecl gate_decl() {
        Token start = take();
        Token name = expect(Tok::Ident, "gate name");
        expect(Tok::Equals, "'='");
        GateDecl decl{name.text, {}, loc_of(start)};
        expect(Tok::LBracket, "'['");
        do {
            expect(Tok::LBracket, "'['");
            std::vector<Complex> row;
            do {
                row.push_back(scalar());
            } while (cur().kind == Tok::Comma && (take(), true));
            expect(Tok::RBracket, "']'");
            decl.rows.push_back(std::move(row));
        } while (cur().kind == Tok::Comma && (take(), true));
        expect(Tok::RBracket, "']'");
        expect(Tok::Semicolon, "';'");
        return decl;
    }

    Definition definition() {
        Token start = take();
        if (cur().kind != Tok::Ident || reserved_words().count(cur().text) != 0) fail({"identifier"});
        Token name = take();
        expect(Tok::Equals, "'='");
        TermPtr body = term();
        expect(Tok::Semicolon, "';'");
        return Definition{name.text, body, loc_of(start)};
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(int line, int column, std::vector<std::string> expected, std::string found)
    : std::runtime_error(describe(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

TermPtr parse_term(std::string_view text) { return Parser(text).whole_term(); }
TypePtr parse_type(std::string_view text) { return Parser(text).whole_type(); }
Complex parse_scalar(std::string_view text) { return Parser(text).whole_scalar(); }
Program parse_program(std::string_view text) { return Parser(text).program(); }

TermPtr expand_definitions(const TermPtr& t, const std::vector<Definition>& defs) {
    Bindings expanded;
    for (const auto& d : defs) expanded[d.name] = subst(d.body, expanded);
    return subst(t, expanded);
}

}  // namespace qlam
