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

#include "ktl/game.hpp"

#include <charconv>
#include <sstream>

#include "text.hpp"

namespace ktl {

namespace {

struct PendingEdge {
    Token source;
    Token action;
    Token target;
};

unsigned parse_attribute(const Token& tok, std::string_view key)
{
    std::string prefix = std::string(key) + "=";
    if (tok.text.substr(0, prefix.size()) != prefix)
        throw ParseError(tok.line, tok.column, "expected '" + prefix + "<uint>'");
    auto digits = tok.text.substr(prefix.size());
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size())
        throw ParseError(tok.line, tok.column + prefix.size(), "expected an unsigned integer");
    return value;
}

}  // namespace

GameGraph parse_game(std::string_view text)
{
    std::optional<Objective> objective;
    std::optional<std::vector<std::string>> sigma, gamma;
    std::optional<GameGraph> g;
    std::optional<Token> init;
    std::vector<PendingEdge> edges;

    auto require_header = [&](const Token& at) -> GameGraph& {
        if (!objective || !sigma || !gamma)
            throw ParseError(at.line, at.column, "'game', 'alphabet1' and 'alphabet2' must precede '" + std::string(at.text) + "'");
        if (!g) g.emplace(*objective, *sigma, *gamma);
        return *g;
    };

    for (const auto& line : tokenize_lines(text)) {
        const Token& head = line.front();
        const auto& args = line;
        auto argc = args.size() - 1;
        if (head.text == "game") {
            if (objective) throw ParseError(head.line, head.column, "duplicate 'game' line");
            if (argc != 1) throw ParseError(head.line, head.column, "expected 'game <reachability|buchi|parity>'");
            objective = objective_from_string(args[1].text);
            if (!objective) throw ParseError(args[1].line, args[1].column, "unknown objective '" + std::string(args[1].text) + "'");
        } else if (head.text == "alphabet1" || head.text == "alphabet2") {
            auto& slot = head.text == "alphabet1" ? sigma : gamma;
            if (slot) throw ParseError(head.line, head.column, "duplicate '" + std::string(head.text) + "' line");
            if (g) throw ParseError(head.line, head.column, "alphabets must precede vertices");
            std::vector<std::string> symbols;
            for (std::size_t i = 1; i < args.size(); ++i) {
                if (!is_symbol(args[i].text))
                    throw ParseError(args[i].line, args[i].column, "invalid action symbol '" + std::string(args[i].text) + "'");
                for (const auto& s : symbols)
                    if (s == args[i].text) throw ParseError(args[i].line, args[i].column, "duplicate action symbol '" + s + "'");
                symbols.emplace_back(args[i].text);
            }
            slot = std::move(symbols);
        } else if (head.text == "vertex") {
            auto& graph = require_header(head);
            if (argc != 3) throw ParseError(head.line, head.column, "expected 'vertex <name> owner=<1|2> color=<uint>'");
            unsigned owner = parse_attribute(args[2], "owner");
            if (owner != 1 && owner != 2) throw ParseError(args[2].line, args[2].column, "owner must be 1 or 2");
            unsigned color = parse_attribute(args[3], "color");
            if (graph.find(args[1].text))
                throw ParseError(args[1].line, args[1].column, "duplicate vertex name '" + std::string(args[1].text) + "'");
            graph.add_vertex(std::string(args[1].text), owner == 1 ? Player::One : Player::Two, color);
        } else if (head.text == "init") {
            require_header(head);
            if (init) throw ParseError(head.line, head.column, "duplicate 'init' line");
            if (argc != 1) throw ParseError(head.line, head.column, "expected 'init <name>'");
            init = args[1];
        } else if (head.text == "edge") {
            require_header(head);
            if (argc != 3) throw ParseError(head.line, head.column, "expected 'edge <src> <action> <dst>'");
            edges.push_back(PendingEdge{args[1], args[2], args[3]});
        } else {
            throw ParseError(head.line, head.column, "unknown directive '" + std::string(head.text) + "'");
        }
    }

    if (!objective) throw ParseError(1, 1, "missing 'game' line");
    if (!sigma || !gamma) throw ParseError(1, 1, "missing alphabet line");
    if (!g) g.emplace(*objective, *sigma, *gamma);

    auto lookup = [&](const Token& tok) {
        auto v = g->find(tok.text);
        if (!v) throw ParseError(tok.line, tok.column, "unknown vertex '" + std::string(tok.text) + "'");
        return *v;
    };
    for (const auto& e : edges) {
        VertexId src = lookup(e.source);
        VertexId dst = lookup(e.target);
        Player owner = g->owner(src);
        auto a = g->find_action(owner, e.action.text);
        if (!a) {
            if (g->find_action(opponent(owner), e.action.text))
                throw ParseError(e.action.line, e.action.column,
                                 "action '" + std::string(e.action.text) + "' belongs to the other player's alphabet than the owner of '" +
                                     std::string(e.source.text) + "'");
            throw ParseError(e.action.line, e.action.column, "unknown action symbol '" + std::string(e.action.text) + "'");
        }
        if (g->successor(src, *a) != kNoVertex)
            throw ParseError(e.source.line, e.source.column, "duplicate edge for ('" + std::string(e.source.text) + "', '" + std::string(e.action.text) + "')");
        g->set_edge(src, *a, dst);
    }
    if (!init) throw ParseError(1, 1, "missing 'init' line");
    g->set_initial(lookup(*init));
    return std::move(*g);
}

std::string serialize_game(const GameGraph& g)
{
    std::ostringstream out;
    out << "game " << to_string(g.objective()) << '\n';
    out << "alphabet1";
    for (const auto& s : g.alphabet(Player::One)) out << ' ' << s;
    out << "\nalphabet2";
    for (const auto& s : g.alphabet(Player::Two)) out << ' ' << s;
    out << '\n';
    for (const auto& v : g.vertices())
        out << "vertex " << v.name << " owner=" << static_cast<int>(v.owner) << " color=" << v.color << '\n';
    if (g.initial()) out << "init " << g.vertex(*g.initial()).name << '\n';
    for (VertexId v = 0; v < g.size(); ++v) {
        auto succ = g.successors(v);
        const auto& sigma = g.alphabet(g.owner(v));
        for (Action a = 0; a < succ.size(); ++a)
            if (succ[a] != kNoVertex) out << "edge " << g.vertex(v).name << ' ' << sigma[a] << ' ' << g.vertex(succ[a]).name << '\n';
    }
    for (const auto& e : g.foreign_edges())
        out << "edge " << g.vertex(e.source).name << ' ' << g.alphabet(opponent(g.owner(e.source)))[e.action] << ' '
            << g.vertex(e.target).name << '\n';
    return out.str();
}

}  // namespace ktl
