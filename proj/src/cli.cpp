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

#include "qlam/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qlam/denotation.hpp"
#include "qlam/evaluator.hpp"
#include "qlam/parser.hpp"
#include "qlam/printer.hpp"
#include "qlam/typecheck.hpp"

namespace qlam::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Failure {
    int code;
    std::string kind;
    std::string message;
};

Failure describe(const std::exception_ptr& ep) {
    try {
        std::rethrow_exception(ep);
    } catch (const ParseError& e) {
        return {kParseError, "ParseError", e.what()};
    } catch (const nlohmann::json::exception& e) {
        return {kParseError, "ParseError", e.what()};
    } catch (const TypeError& e) {
        return {kTypeError, to_string(e.kind()), e.what()};
    } catch (const CongruenceError& e) {
        return {kTypeError, "NonCongruent", e.what()};
    } catch (const GateError& e) {
        return {kTypeError, to_string(e.kind()), e.what()};
    } catch (const EvalError& e) {
        return {e.kind() == EvalError::Kind::FuelExhausted ? kLimit : kTypeError, to_string(e.kind()), e.what()};
    } catch (const DenotationError& e) {
        return {e.kind() == DenotationError::Kind::DimensionCap ? kLimit : kTypeError, to_string(e.kind()),
                e.what()};
    } catch (const UsageError& e) {
        return {kUsage, "Usage", e.what()};
    } catch (const std::filesystem::filesystem_error& e) {
        return {kUsage, "IO", e.what()};
    }
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (...) {
        Failure f = describe(std::current_exception());
        err << "error: " << f.kind << ": " << f.message << "\n";
        return f.code;
    }
}

std::string read_text(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << file.rdbuf();
    return os.str();
}

struct Loaded {
    GateRegistry gates;
    std::vector<Definition> defs;
    TermPtr term;
    Superposition state;
};

Superposition linearize_checked(const TermPtr& t) {
    try {
        return linearize(t);
    } catch (const CongruenceError& e) {
        throw TypeError::non_congruent(e.what(), t->loc);
    }
}

Loaded load(const std::string& text, const GateRegistry& base) {
    Program p = parse_program(text);
    Loaded out{base, std::move(p.defs), nullptr, {}};
    for (const auto& g : p.gates) out.gates.declare(g.name, matrix_from_rows(g.rows));
    if (!p.main) throw UsageError("the source declares no term");
    out.term = expand_definitions(p.main, out.defs);
    out.state = linearize_checked(out.term);
    return out;
}

/// Rounds to the displayed 10 significant digits so the printed scalar is
/// exactly the displayed amplitude.
Complex displayed(Complex c) { return parse_scalar(format_amplitude(c)); }

TermPtr weighted(const TermPtr& t, Complex amp) {
    Complex shown = displayed(amp);
    return shown == Complex(1.0, 0.0) ? t : make_scale(shown, t);
}

std::string key_of(const TermPtr& t) { return Superposition::of(t).entries().begin()->first; }

bool split_product(const Superposition& s, Superposition& left, Superposition& right) {
    std::vector<std::string> lkeys, rkeys;
    std::vector<TermPtr> lterms, rterms;
    struct Cell {
        std::size_t l, r;
        Complex amp;
    };
    std::vector<Cell> cells;
    auto index = [](std::vector<std::string>& keys, std::vector<TermPtr>& terms, const TermPtr& t) {
        std::string k = key_of(t);
        auto it = std::find(keys.begin(), keys.end(), k);
        if (it != keys.end()) return static_cast<std::size_t>(it - keys.begin());
        keys.push_back(k);
        terms.push_back(t);
        return keys.size() - 1;
    };
    for (const auto& [key, e] : s.entries()) {
        const auto& p = *e.term->as<node::Pair>();
        std::size_t l = index(lkeys, lterms, p.left);
        std::size_t r = index(rkeys, rterms, p.right);
        cells.push_back({l, r, e.amplitude});
    }
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(lkeys.size()), static_cast<Eigen::Index>(rkeys.size()));
    for (const auto& c : cells) m(static_cast<Eigen::Index>(c.l), static_cast<Eigen::Index>(c.r)) = c.amp;

    Eigen::Index pr = 0, pc = 0;
    m.cwiseAbs().maxCoeff(&pr, &pc);
    Vector u = m.col(pc);
    Eigen::RowVectorXcd v = m.row(pr) / m(pr, pc);
    if ((m - u * v).cwiseAbs().maxCoeff() > kNormTolerance) return false;

    Complex lead = u(0);
    for (Eigen::Index i = 0; i < u.size(); ++i)
        if (std::abs(u(i)) > kPruneThreshold) {
            lead = u(i);
            break;
        }
    Complex scale = u.norm() * lead / std::abs(lead);
    u /= scale;
    v *= scale;
    SuperpositionBuilder lb, rb;
    for (std::size_t i = 0; i < lterms.size(); ++i) lb.add(lterms[i], u(static_cast<Eigen::Index>(i)));
    for (std::size_t j = 0; j < rterms.size(); ++j) rb.add(rterms[j], v(static_cast<Eigen::Index>(j)));
    left = lb.build();
    right = rb.build();
    return !left.empty() && !right.empty();
}

TermPtr factored(const Superposition& s) {
    if (s.empty()) return make_scale(0.0, make_qubit(0));
    if (s.size() == 1) {
        const auto& e = s.entries().begin()->second;
        return weighted(e.term, e.amplitude);
    }
    if (s.skeleton().term->is<node::Pair>()) {
        Superposition l, r;
        if (split_product(s, l, r)) return make_pair(factored(l), factored(r));
    }
    TermPtr sum;
    for (const auto& [key, e] : s.entries()) {
        TermPtr item = make_scale(displayed(e.amplitude), e.term);
        sum = sum ? make_sum(sum, item) : item;
    }
    return sum;
}

struct Options {
    std::string gates_path;
    std::string input;
    std::size_t fuel = kDefaultFuel;
    bool phase = false;
    bool json = false;
    bool trace = false;
};

GateRegistry base_registry(const Options& o, std::istream& in) {
    GateRegistry g = GateRegistry::with_builtins();
    if (!o.gates_path.empty()) g.load_json(nlohmann::json::parse(read_text(o.gates_path, in)));
    return g;
}

int cmd_check(const std::string& text, const GateRegistry& base, std::ostream& out) {
    Loaded l = load(text, base);
    out << pretty(infer(Context{}, l.state, l.gates)) << "\n";
    return kOk;
}

int cmd_eval(const std::string& text, const GateRegistry& base, const Options& o, std::ostream& out,
             std::ostream& err) {
    Loaded l = load(text, base);
    infer(Context{}, l.state, l.gates);
    EvalOptions opts;
    opts.fuel = o.fuel;
    if (o.trace)
        opts.trace = [&err](std::size_t n, const Superposition& s) {
            ordered_json line;
            line["step"] = n;
            line["state"] = to_json(s);
            err << line.dump() << "\n";
        };
    Superposition result = eval(l.state, l.gates, opts);
    if (o.phase) result = fix_phase(result);
    if (o.json)
        out << to_json(result).dump() << "\n";
    else
        out << display(result) << "\n";
    return kOk;
}

double clean(double x) { return x + 0.0; }

int cmd_denote(const std::string& text, const GateRegistry& base, std::ostream& out) {
    Loaded l = load(text, base);
    DerivationPtr d = derive(Context{}, l.state, l.gates);
    SemMorphism m = denote(*d, l.gates);
    ordered_json j;
    j["type"] = pretty(d->type);
    j["rank"] = rank_of(*d->type);
    j["carrier_dim"] = carrier_dim(*d->type);
    ordered_json rows = ordered_json::array();
    for (Eigen::Index r = 0; r < m.matrix.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.matrix.cols(); ++c)
            row.push_back({clean(m.matrix(r, c).real()), clean(m.matrix(r, c).imag())});
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    out << j.dump() << "\n";
    return kOk;
}

int cmd_rank(const std::string& type_text, std::ostream& out) {
    TypePtr t = parse_type(type_text);
    ordered_json j;
    j["rank"] = rank_of(*t);
    j["carrier_dim"] = carrier_dim(*t);
    out << j.dump() << "\n";
    return kOk;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool starts_with_word(const std::string& s, const std::string& word) {
    return s.rfind(word, 0) == 0 && (s.size() == word.size() || std::isspace(static_cast<unsigned char>(s[word.size()])));
}

int cmd_repl(const GateRegistry& base, const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
    std::string prelude;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.rfind("--", 0) == 0) continue;
        if (line == ":quit" || line == ":q") break;
        if (line == ":help") {
            out << ":check TERM | :eval TERM | :denote TERM | :rank TYPE | gate ...; | def ...; | :quit\n";
            continue;
        }
        if (starts_with_word(line, "gate") || starts_with_word(line, "def")) {
            std::string decl = line.back() == ';' ? line : line + ";";
            guarded(err, [&] {
                Program p = parse_program(prelude + decl + "\n");
                GateRegistry probe = base;
                for (const auto& g : p.gates) probe.declare(g.name, matrix_from_rows(g.rows));
                prelude += decl + "\n";
                return kOk;
            });
            continue;
        }
        std::string command = ":eval";
        std::string rest = line;
        if (line[0] == ':') {
            auto space = line.find(' ');
            command = line.substr(0, space);
            rest = space == std::string::npos ? "" : trim(line.substr(space));
        }
        std::string text = prelude + rest;
        guarded(err, [&] {
            if (command == ":check") return cmd_check(text, base, out);
            if (command == ":eval") return cmd_eval(text, base, o, out, err);
            if (command == ":denote") return cmd_denote(text, base, out);
            if (command == ":rank") return cmd_rank(rest, out);
            throw UsageError("unknown directive '" + command + "'");
        });
    }
    return kOk;
}

bool column_matches(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= kNormTolerance;
}

/// Empty string on success, otherwise the reason for failing.
std::string check_expectation(const std::string& expect, const std::string& text, const GateRegistry& base,
                              bool phase) {
    std::string word = expect.substr(0, expect.find(' '));
    std::string rest = trim(expect.substr(word.size()));
    if (word == "error") {
        try {
            Loaded l = load(text, base);
            infer(Context{}, l.state, l.gates);
            eval(l.state, l.gates);
        } catch (...) {
            Failure f = describe(std::current_exception());
            return f.kind == rest ? "" : "expected error " + rest + ", got " + f.kind + ": " + f.message;
        }
        return "expected error " + rest + ", got success";
    }
    try {
        Loaded l = load(text, base);
        TypePtr type = infer(Context{}, l.state, l.gates);
        if (word == "type") {
            TypePtr expected = parse_type(rest);
            return type_equal(type, expected) ? "" : "expected type " + pretty(expected) + ", got " + pretty(type);
        }
        if (word == "normal") {
            Superposition expected = linearize_checked(expand_definitions(parse_term(rest), l.defs));
            Superposition result = eval(l.state, l.gates);
            if (equiv(result, expected, l.gates, {}, phase ? CompareMode::GlobalPhase : CompareMode::Strict))
                return "";
            return "expected normal form " + display(expected) + ", got " + display(result);
        }
        if (word == "sound") {
            Matrix initial = denote(Context{}, l.state, l.gates).matrix;
            std::string failure;
            EvalOptions opts;
            opts.trace = [&](std::size_t n, const Superposition& s) {
                if (failure.empty() && !column_matches(denote(Context{}, s, l.gates).matrix, initial))
                    failure = "denotation changed at step " + std::to_string(n);
            };
            Superposition result = eval(l.state, l.gates, opts);
            if (!failure.empty()) return failure;
            if (qbit_count(*type) != 0 && !column_matches(state_column(result), initial))
                return "normal form differs from the denotation";
            return "";
        }
        return "unknown expectation '" + word + "'";
    } catch (...) {
        Failure f = describe(std::current_exception());
        return "unexpected error " + f.kind + ": " + f.message;
    }
}

}  // namespace

Superposition fix_phase(const Superposition& s) {
    if (s.empty()) return s;
    Complex first = s.entries().begin()->second.amplitude;
    return s.scaled(std::abs(first) / first);
}

std::string display(const Superposition& s) { return pretty(factored(s)); }

int run_corpus(const std::filesystem::path& dir, const GateRegistry& gates, bool phase, std::ostream& out,
               std::ostream& err) {
    if (!std::filesystem::is_directory(dir)) {
        err << "error: IO: '" << dir.string() << "' is not a directory\n";
        return kUsage;
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".qlam") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::size_t passed = 0;
    for (const auto& file : files) {
        std::ifstream is(file, std::ios::binary);
        if (!is) {
            err << "error: IO: cannot read '" << file.string() << "'\n";
            return kUsage;
        }
        std::ostringstream os;
        os << is.rdbuf();
        std::string text = os.str();

        std::vector<std::string> expects;
        std::istringstream lines(text);
        std::string line;
        const std::string tag = "-- EXPECT:";
        while (std::getline(lines, line)) {
            line = trim(line);
            if (line.rfind(tag, 0) == 0) expects.push_back(trim(line.substr(tag.size())));
        }
        std::string reason = expects.empty() ? "no EXPECT line" : "";
        for (const auto& e : expects) {
            if (!reason.empty()) break;
            reason = check_expectation(e, text, gates, phase);
        }
        if (reason.empty()) {
            ++passed;
            out << "PASS  " << file.filename().string() << "\n";
        } else {
            out << "FAIL  " << file.filename().string() << ": " << reason << "\n";
        }
    }
    out << files.size() << " cases, " << passed << " passed, " << files.size() - passed << " failed\n";
    return passed == files.size() ? kOk : kTypeError;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Linear quantum lambda calculus: check, evaluate and denote terms", "qlam"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--gates", o.gates_path, "JSON file of extra gate declarations");

    auto* check = app.add_subcommand("check", "Print the type of a term");
    check->add_option("file", o.input, "Source file, '-' for stdin")->required();

    auto* ev = app.add_subcommand("eval", "Evaluate a closed term to normal form");
    ev->add_option("file", o.input, "Source file, '-' for stdin")->required();
    ev->add_option("--fuel", o.fuel, "Step limit")->check(CLI::PositiveNumber);
    ev->add_flag("--phase", o.phase, "Report the state with its global phase removed");
    ev->add_flag("--json", o.json, "JSON output");
    ev->add_flag("--trace", o.trace, "Write each intermediate state as a JSON line to stderr");

    auto* den = app.add_subcommand("denote", "Print the carrier-level matrix of a closed term");
    den->add_option("file", o.input, "Source file, '-' for stdin")->required();

    auto* rank = app.add_subcommand("rank", "Print the rank and carrier dimension of a type");
    rank->add_option("type", o.input, "Type expression")->required();

    auto* repl = app.add_subcommand("repl", "Read terms and directives from stdin");

    auto* corpus = app.add_subcommand("corpus", "Run a directory of .qlam files against their EXPECT lines");
    corpus->add_option("dir", o.input, "Corpus directory")->required();
    corpus->add_flag("--phase", o.phase, "Compare normal forms up to global phase");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    return guarded(err, [&] {
        if (rank->parsed()) return cmd_rank(o.input, out);
        GateRegistry base = base_registry(o, in);
        if (check->parsed()) return cmd_check(read_text(o.input, in), base, out);
        if (ev->parsed()) return cmd_eval(read_text(o.input, in), base, o, out, err);
        if (den->parsed()) return cmd_denote(read_text(o.input, in), base, out);
        if (repl->parsed()) return cmd_repl(base, o, in, out, err);
        return run_corpus(o.input, base, o.phase, out, err);
    });
}

}  // namespace qlam::cli
