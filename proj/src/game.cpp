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

#include <algorithm>
#include <map>

namespace ktl {

std::string_view to_string(Objective objective)
{
    switch (objective) {
    case Objective::Reachability: return "reachability";
    case Objective::Buchi: return "buchi";
    case Objective::Parity: return "parity";
    }
    return "parity";
}

std::optional<Objective> objective_from_string(std::string_view text)
{
    if (text == "reachability") return Objective::Reachability;
    if (text == "buchi") return Objective::Buchi;
    if (text == "parity") return Objective::Parity;
    return std::nullopt;
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column), message_(message)
{
}

IllegalMove::IllegalMove(std::size_t index, const std::string& message)
    : std::runtime_error("illegal action at index " + std::to_string(index) + ": " + message), index_(index)
{
}

GameGraph::GameGraph(Objective objective, std::vector<std::string> alphabet1, std::vector<std::string> alphabet2)
    : objective_(objective), alphabet1_(std::move(alphabet1)), alphabet2_(std::move(alphabet2))
{
}

VertexId GameGraph::add_vertex(std::string name, Player owner, unsigned color)
{
    if (by_name_.count(name)) throw std::invalid_argument("duplicate vertex name '" + name + "'");
    auto id = static_cast<VertexId>(vertices_.size());
    by_name_.emplace(name, id);
    vertices_.push_back(Vertex{std::move(name), owner, color});
    edges_.emplace_back(alphabet(owner).size(), kNoVertex);
    return id;
}

void GameGraph::set_initial(VertexId v)
{
    if (v >= size()) throw std::out_of_range("initial vertex out of range");
    initial_ = v;
}

void GameGraph::set_edge(VertexId source, Action a, VertexId target)
{
    if (source >= size() || target >= size()) throw std::out_of_range("edge endpoint out of range");
    if (a >= edges_[source].size()) throw std::out_of_range("action out of range for the owner of '" + vertices_[source].name + "'");
    edges_[source][a] = target;
}

void GameGraph::remove_edge(VertexId source, Action a)
{
    edges_.at(source).at(a) = kNoVertex;
}

void GameGraph::add_foreign_edge(VertexId source, Action a, VertexId target)
{
    if (source >= size() || target >= size()) throw std::out_of_range("edge endpoint out of range");
    if (a >= alphabet(opponent(owner(source))).size()) throw std::out_of_range("foreign action out of range");
    foreign_.push_back(ForeignEdge{source, a, target});
}

void GameGraph::set_color(VertexId v, unsigned color)
{
    vertices_.at(v).color = color;
}

std::optional<Action> GameGraph::find_action(Player p, std::string_view symbol) const
{
    const auto& sigma = alphabet(p);
    auto it = std::find(sigma.begin(), sigma.end(), symbol);
    if (it == sigma.end()) return std::nullopt;
    return static_cast<Action>(it - sigma.begin());
}

std::optional<VertexId> GameGraph::find(std::string_view name) const
{
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<VertexId> GameGraph::initial() const
{
    if (initial_ == kNoVertex) return std::nullopt;
    return initial_;
}

std::size_t GameGraph::defined_edges(VertexId v) const
{
    return static_cast<std::size_t>(std::count_if(edges_[v].begin(), edges_[v].end(), [](VertexId t) { return t != kNoVertex; }));
}

bool GameGraph::is_total() const
{
    for (const auto& row : edges_)
        for (VertexId t : row)
            if (t == kNoVertex) return false;
    return !alphabet1_.empty() && !alphabet2_.empty();
}

std::string_view to_string(Violation::Kind kind)
{
    switch (kind) {
    case Violation::Kind::MissingInitial: return "missing-initial";
    case Violation::Kind::InitialOwner: return "initial-owner";
    case Violation::Kind::Totality: return "totality";
    case Violation::Kind::Typing: return "typing";
    case Violation::Kind::Alternation: return "alternation";
    case Violation::Kind::Color: return "color";
    case Violation::Kind::EmptyAlphabet: return "empty-alphabet";
    }
    return "unknown";
}

std::string describe(const GameGraph& g, const Violation& v)
{
    std::string out = "VIOLATION ";
    out += to_string(v.kind);
    out += ' ';
    out += v.vertex == kNoVertex ? std::string("-") : g.vertex(v.vertex).name;
    if (v.action && v.alphabet) {
        out += ' ';
        out += g.alphabet(*v.alphabet)[*v.action];
    }
    return out;
}

std::vector<Violation> validate(const GameGraph& g)
{
    std::vector<Violation> out;
    if (g.alphabet(Player::One).empty()) out.push_back({Violation::Kind::EmptyAlphabet, kNoVertex, std::nullopt, Player::One});
    if (g.alphabet(Player::Two).empty()) out.push_back({Violation::Kind::EmptyAlphabet, kNoVertex, std::nullopt, Player::Two});
    if (!g.initial())
        out.push_back({Violation::Kind::MissingInitial, kNoVertex, std::nullopt, std::nullopt});
    else if (g.owner(*g.initial()) != Player::One)
        out.push_back({Violation::Kind::InitialOwner, *g.initial(), std::nullopt, std::nullopt});

    bool two_colors = g.objective() != Objective::Parity;
    for (VertexId v = 0; v < g.size(); ++v) {
        if (two_colors && g.color(v) != 1 && g.color(v) != 2)
            out.push_back({Violation::Kind::Color, v, std::nullopt, std::nullopt});
        auto succ = g.successors(v);
        for (Action a = 0; a < succ.size(); ++a) {
            if (succ[a] == kNoVertex)
                out.push_back({Violation::Kind::Totality, v, a, g.owner(v)});
            else if (g.owner(succ[a]) == g.owner(v))
                out.push_back({Violation::Kind::Alternation, v, a, g.owner(v)});
        }
    }
    for (const auto& e : g.foreign_edges())
        out.push_back({Violation::Kind::Typing, e.source, e.action, opponent(g.owner(e.source))});
    return out;
}

VertexId ensure_paradise(GameGraph& g, Player winner, Player mover)
{
    auto entry_name = winner == Player::One ? kP1ParadiseEntry : kP2ParadiseEntry;
    auto exit_name = winner == Player::One ? kP1ParadiseExit : kP2ParadiseExit;
    auto entry = g.find(entry_name);
    auto exit = g.find(exit_name);
    if (!entry || !exit) {
        unsigned color = winner == Player::One ? 1 : 2;
        // entry is owned by the opponent of the winner's own vertex pair start
        Player entry_owner = winner == Player::One ? Player::One : Player::Two;
        entry = g.add_vertex(std::string(entry_name), entry_owner, color);
        exit = g.add_vertex(std::string(exit_name), opponent(entry_owner), color);
        for (Action a = 0; a < g.alphabet(entry_owner).size(); ++a) g.set_edge(*entry, a, *exit);
        for (Action a = 0; a < g.alphabet(opponent(entry_owner)).size(); ++a) g.set_edge(*exit, a, *entry);
    }
    Player wanted = opponent(mover);
    return g.owner(*entry) == wanted ? *entry : *exit;
}

GameGraph complete(const GameGraph& g)
{
    GameGraph out = g;
    const auto original = static_cast<VertexId>(g.size());
    for (VertexId v = 0; v < original; ++v) {
        for (Action a = 0; a < g.successors(v).size(); ++a) {
            if (out.successor(v, a) != kNoVertex) continue;
            Player mover = g.owner(v);
            out.set_edge(v, a, ensure_paradise(out, opponent(mover), mover));
        }
    }
    return out;
}

Word Lasso::word() const
{
    Word w;
    for (const auto& s : prefix) w.prefix.push_back(s.action);
    for (const auto& s : cycle) w.cycle.push_back(s.action);
    return w;
}

namespace {

VertexId move(const GameGraph& g, VertexId v, Action a, std::size_t index)
{
    auto succ = g.successors(v);
    if (a >= succ.size()) throw IllegalMove(index, "action id " + std::to_string(a) + " outside the alphabet of '" + g.vertex(v).name + "'");
    if (succ[a] == kNoVertex)
        throw IllegalMove(index, "no edge '" + g.alphabet(g.owner(v))[a] + "' from '" + g.vertex(v).name + "'");
    return succ[a];
}

}  // namespace

std::vector<VertexId> play_from(const GameGraph& g, VertexId start, std::span<const Action> actions)
{
    std::vector<VertexId> out{start};
    for (std::size_t i = 0; i < actions.size(); ++i) out.push_back(move(g, out.back(), actions[i], i));
    return out;
}

Player winner_of_lasso(const GameGraph& g, VertexId start, const Word& w)
{
    if (w.cycle.empty()) throw std::invalid_argument("winner_of_lasso needs a nonempty cycle");
    bool reached = g.color(start) == 2;
    VertexId v = start;
    std::size_t index = 0;
    for (Action a : w.prefix) {
        v = move(g, v, a, index++);
        reached = reached || g.color(v) == 2;
    }
    // The vertex at the head of each cycle iteration is eventually periodic.
    std::map<VertexId, std::size_t> seen;
    std::vector<std::vector<VertexId>> iterations;
    while (!seen.count(v)) {
        seen.emplace(v, iterations.size());
        auto& visited = iterations.emplace_back();
        for (Action a : w.cycle) {
            v = move(g, v, a, index++);
            visited.push_back(v);
            reached = reached || g.color(v) == 2;
        }
    }
    unsigned top = 0;
    bool buchi = false;
    for (std::size_t i = seen[v]; i < iterations.size(); ++i) {
        for (VertexId u : iterations[i]) {
            top = std::max(top, g.color(u));
            buchi = buchi || g.color(u) == 2;
        }
    }
    switch (g.objective()) {
    case Objective::Reachability: return reached ? Player::Two : Player::One;
    case Objective::Buchi: return buchi ? Player::Two : Player::One;
    case Objective::Parity: return top % 2 == 0 ? Player::Two : Player::One;
    }
    return Player::One;
}

Player winner_of_lasso(const GameGraph& g, const Word& w)
{
    if (!g.initial()) throw std::invalid_argument("game has no initial vertex");
    return winner_of_lasso(g, *g.initial(), w);
}

Arena make_arena(const GameGraph& g)
{
    Arena arena;
    arena.owner.reserve(g.size());
    arena.first.reserve(g.size() + 1);
    arena.first.push_back(0);
    for (VertexId v = 0; v < g.size(); ++v) {
        arena.owner.push_back(g.owner(v));
        arena.color.push_back(g.color(v));
        auto succ = g.successors(v);
        for (Action a = 0; a < succ.size(); ++a) {
            if (succ[a] == kNoVertex) continue;
            arena.label.push_back(a);
            arena.target.push_back(succ[a]);
        }
        arena.first.push_back(static_cast<std::uint32_t>(arena.target.size()));
    }
    return arena;
}

std::vector<VertexId> Solution::region(Player p) const
{
    std::vector<VertexId> out;
    for (VertexId v = 0; v < winner.size(); ++v)
        if (winner[v] == p) out.push_back(v);
    return out;
}

}  // namespace ktl
