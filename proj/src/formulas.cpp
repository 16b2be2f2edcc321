/*
 * Copyright 2026 The ktlive Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "ktl/reductions.hpp"
#include "text.hpp"

namespace ktl {

void check(const QbfFormula& psi)
{
    if (psi.k == 0) throw std::invalid_argument("QBF needs at least one variable pair");
    if (psi.clauses.empty()) throw std::invalid_argument("QBF needs at least one clause");
    for (const auto& c : psi.clauses) {
        if (c.empty()) throw std::invalid_argument("empty clause");
        for (const auto& l : c)
            if (l.index < 1 || l.index > psi.k) throw std::invalid_argument("literal variable out of range");
    }
}

void check(const CnfFormula& phi)
{
    if (phi.k == 0) throw std::invalid_argument("CNF needs at least one variable");
    if (phi.clauses.empty()) throw std::invalid_argument("CNF needs at least one clause");
    for (const auto& c : phi.clauses) {
        if (c.empty()) throw std::invalid_argument("empty clause");
        for (int l : c)
            if (l == 0 || static_cast<unsigned>(std::abs(l)) > phi.k) throw std::invalid_argument("literal variable out of range");
    }
}

namespace {

int parse_int(const Token& tok)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
        throw ParseError(tok.line, tok.column, "expected an integer, got '" + std::string(tok.text) + "'");
    return value;
}

struct Quantifier {
    bool existential;
    int variable;
    std::size_t line, column;
};

struct Dimacs {
    int variables = 0;
    int clauses = 0;
    std::vector<Quantifier> prefix;
    std::vector<std::vector<int>> body;
};

// DIMACS comments start with 'c' at the beginning of a line.
Dimacs read_dimacs(std::string_view text, bool allow_prefix)
{
    std::string cleaned;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        auto first = line.find_first_not_of(" \t\r");
        bool comment = first != std::string_view::npos && line[first] == 'c';
        cleaned += comment ? std::string_view{} : line;
        cleaned += '\n';
        if (nl == text.size()) break;
        pos = nl + 1;
    }

    Dimacs d;
    bool header = false;
    std::vector<int> clause;
    for (const auto& line : tokenize_lines(cleaned)) {
        const auto& head = line[0];
        if (head.text == "p") {
            if (header) throw ParseError(head.line, head.column, "duplicate problem line");
            if (line.size() != 4 || line[1].text != "cnf") throw ParseError(head.line, head.column, "expected 'p cnf <vars> <clauses>'");
            d.variables = parse_int(line[2]);
            d.clauses = parse_int(line[3]);
            if (d.variables < 0 || d.clauses < 0) throw ParseError(head.line, head.column, "negative count");
            header = true;
            continue;
        }
        if (!header) throw ParseError(head.line, head.column, "missing problem line");
        if (head.text == "a" || head.text == "e") {
            if (!allow_prefix) throw ParseError(head.line, head.column, "quantifier line in a DIMACS CNF document");
            if (!d.body.empty() || !clause.empty()) throw ParseError(head.line, head.column, "quantifier line after clauses");
            if (line.size() != 3 || parse_int(line[2]) != 0)
                throw ParseError(head.line, head.column, "expected exactly one variable per quantifier line, terminated by 0");
            d.prefix.push_back({head.text == "e", parse_int(line[1]), line[1].line, line[1].column});
            continue;
        }
        for (const auto& tok : line) {
            int lit = parse_int(tok);
            if (lit == 0) {
                if (clause.empty()) throw ParseError(tok.line, tok.column, "empty clause");
                d.body.push_back(std::move(clause));
                clause.clear();
            } else {
                if (std::abs(lit) > d.variables) throw ParseError(tok.line, tok.column, "literal " + std::to_string(lit) + " exceeds the declared variable count");
                clause.push_back(lit);
            }
        }
    }
    if (!header) throw ParseError(1, 1, "missing problem line");
    if (!clause.empty()) throw ParseError(1, 1, "last clause is not terminated by 0");
    if (static_cast<int>(d.body.size()) != d.clauses)
        throw ParseError(1, 1, "declared " + std::to_string(d.clauses) + " clauses, found " + std::to_string(d.body.size()));
    return d;
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text)
{
    Dimacs d = read_dimacs(text, false);
    CnfFormula phi{static_cast<unsigned>(d.variables), std::move(d.body)};
    check(phi);
    return phi;
}

std::string serialize_dimacs(const CnfFormula& phi)
{
    std::ostringstream out;
    out << "p cnf " << phi.k << ' ' << phi.clauses.size() << '\n';
    for (const auto& c : phi.clauses) {
        for (int l : c) out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

QbfFormula parse_qdimacs(std::string_view text)
{
    Dimacs d = read_dimacs(text, true);
    // variable -> (existential, index)
    std::vector<std::optional<std::pair<bool, unsigned>>> role(static_cast<std::size_t>(d.variables) + 1);
    unsigned pairs = 0;
    for (std::size_t i = 0; i < d.prefix.size(); ++i) {
        const auto& q = d.prefix[i];
        bool existential = q.existential;
        if (existential != (i % 2 == 1)) throw ParseError(q.line, 1, "quantifier prefix must alternate a/e starting with 'a'");
        int v = q.variable;
        if (v <= 0 || v > d.variables) throw ParseError(q.line, q.column, "variable out of range");
        if (role[v]) throw ParseError(q.line, q.column, "variable quantified twice");
        if (!existential) ++pairs;
        role[v] = std::make_pair(existential, pairs);
    }
    if (d.prefix.size() % 2 != 0 || d.prefix.empty()) throw ParseError(1, 1, "quantifier prefix must end with an existential line");
    QbfFormula psi;
    psi.k = pairs;
    for (const auto& c : d.body) {
        std::vector<QbfLiteral> clause;
        for (int l : c) {
            const auto& r = role[std::abs(l)];
            if (!r) throw ParseError(1, 1, "free variable " + std::to_string(std::abs(l)));
            clause.push_back({r->first, r->second, l < 0});
        }
        psi.clauses.push_back(std::move(clause));
    }
    check(psi);
    return psi;
}

std::string serialize_qdimacs(const QbfFormula& psi)
{
    // x_i is variable 2i-1, y_i is variable 2i.
    std::ostringstream out;
    out << "p cnf " << 2 * psi.k << ' ' << psi.clauses.size() << '\n';
    for (unsigned i = 1; i <= psi.k; ++i) out << "a " << 2 * i - 1 << " 0\ne " << 2 * i << " 0\n";
    for (const auto& c : psi.clauses) {
        for (const auto& l : c) out << (l.negated ? "-" : "") << (l.existential ? 2 * l.index : 2 * l.index - 1) << ' ';
        out << "0\n";
    }
    return out.str();
}

std::string to_string(const QbfFormula& psi)
{
    std::ostringstream out;
    for (unsigned i = 1; i <= psi.k; ++i) out << "A x" << i << " E y" << i << ' ';
    out << ':';
    for (std::size_t j = 0; j < psi.clauses.size(); ++j) {
        out << (j ? " & (" : " (");
        for (std::size_t t = 0; t < psi.clauses[j].size(); ++t) {
            const auto& l = psi.clauses[j][t];
            out << (t ? " | " : "") << (l.negated ? "~" : "") << (l.existential ? 'y' : 'x') << l.index;
        }
        out << ')';
    }
    return out.str();
}

std::string to_string(const CnfFormula& phi)
{
    std::ostringstream out;
    for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
        out << (j ? " & (" : "(");
        for (std::size_t t = 0; t < phi.clauses[j].size(); ++t) {
            int l = phi.clauses[j][t];
            out << (t ? " | " : "") << (l < 0 ? "~x" : "x") << std::abs(l);
        }
        out << ')';
    }
    return out.str();
}

bool evaluate(const QbfFormula& psi, const std::vector<bool>& x, const std::vector<bool>& y)
{
    for (const auto& c : psi.clauses) {
        bool sat = false;
        for (const auto& l : c) {
            bool v = (l.existential ? y : x).at(l.index - 1);
            sat = sat || (v != l.negated);
        }
        if (!sat) return false;
    }
    return true;
}

bool evaluate(const CnfFormula& phi, const std::vector<bool>& x)
{
    for (const auto& c : phi.clauses) {
        bool sat = false;
        for (int l : c) sat = sat || (x.at(std::abs(l) - 1) != (l < 0));
        if (!sat) return false;
    }
    return true;
}

namespace {

bool expand(const QbfFormula& psi, unsigned level, std::vector<bool>& x, std::vector<bool>& y)
{
    if (level == 2 * psi.k) return evaluate(psi, x, y);
    unsigned i = level / 2;
    bool universal = level % 2 == 0;
    auto& slot = universal ? x : y;
    for (bool value : {false, true}) {
        slot[i] = value;
        bool r = expand(psi, level + 1, x, y);
        if (universal && !r) return false;
        if (!universal && r) return true;
    }
    return universal;
}

}  // namespace

bool qbf_brute_force(const QbfFormula& psi)
{
    check(psi);
    std::vector<bool> x(psi.k), y(psi.k);
    return expand(psi, 0, x, y);
}

std::optional<std::vector<bool>> sat_brute_force(const CnfFormula& phi)
{
    check(phi);
    if (phi.k > 30) throw std::invalid_argument("too many variables for brute force");
    std::vector<bool> x(phi.k);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << phi.k); ++bits) {
        for (unsigned i = 0; i < phi.k; ++i) x[i] = (bits >> i) & 1;
        if (evaluate(phi, x)) return x;
    }
    return std::nullopt;
}

}  // namespace ktl
