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

#ifndef KTL_GAME_HPP
#define KTL_GAME_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ktl {

enum class Player : std::uint8_t { One = 1, Two = 2 };

constexpr Player opponent(Player p) { return p == Player::One ? Player::Two : Player::One; }

/**
 * Winning condition of a game. Player 2 is the "even" player: a play is won
 * by Player 2 iff the largest color seen infinitely often is even. Büchi games
 * use colors {1,2}; reachability games are won by Player 2 once a color-2
 * vertex is visited.
 */
enum class Objective : std::uint8_t { Reachability, Buchi, Parity };

std::string_view to_string(Objective objective);
std::optional<Objective> objective_from_string(std::string_view text);

using VertexId = std::uint32_t;
using Action = std::uint32_t;

inline constexpr VertexId kNoVertex = ~VertexId{0};

struct Vertex {
    std::string name;
    Player owner;
    unsigned color;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// An edge labeled with a symbol of the opponent's alphabet (ill-typed).
struct ForeignEdge {
    VertexId source;
    Action action;
    VertexId target;

    friend bool operator==(const ForeignEdge&, const ForeignEdge&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    /// The message without the position prefix.
    const std::string& message() const { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/**
 * A bipartite game arena. Vertices are identified by their declaration index.
 * Edges of a vertex are stored densely, indexed by the actions of its owner's
 * alphabet; a missing edge is kNoVertex. Graphs may be partial until
 * complete() is applied.
 */
class GameGraph {
public:
    GameGraph() = default;
    GameGraph(Objective objective, std::vector<std::string> alphabet1, std::vector<std::string> alphabet2);

    /// Throws std::invalid_argument on a duplicate name.
    VertexId add_vertex(std::string name, Player owner, unsigned color);
    void set_initial(VertexId v);
    /// Edge labeled with the owner's action `a`. Overwrites an existing edge.
    void set_edge(VertexId source, Action a, VertexId target);
    void remove_edge(VertexId source, Action a);
    /// Records an edge labeled with the opponent's action `a` (kept for validation only).
    void add_foreign_edge(VertexId source, Action a, VertexId target);
    void set_color(VertexId v, unsigned color);

    Objective objective() const { return objective_; }
    const std::vector<std::string>& alphabet(Player p) const { return p == Player::One ? alphabet1_ : alphabet2_; }
    std::optional<Action> find_action(Player p, std::string_view symbol) const;

    std::size_t size() const { return vertices_.size(); }
    const Vertex& vertex(VertexId v) const { return vertices_[v]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    Player owner(VertexId v) const { return vertices_[v].owner; }
    unsigned color(VertexId v) const { return vertices_[v].color; }
    std::optional<VertexId> find(std::string_view name) const;
    std::optional<VertexId> initial() const;

    VertexId successor(VertexId v, Action a) const { return edges_[v][a]; }
    std::span<const VertexId> successors(VertexId v) const { return edges_[v]; }
    const std::vector<ForeignEdge>& foreign_edges() const { return foreign_; }
    std::size_t defined_edges(VertexId v) const;
    bool is_total() const;

    friend bool operator==(const GameGraph&, const GameGraph&) = default;

private:
    Objective objective_ = Objective::Parity;
    std::vector<std::string> alphabet1_;
    std::vector<std::string> alphabet2_;
    std::vector<Vertex> vertices_;
    std::vector<std::vector<VertexId>> edges_;
    std::vector<ForeignEdge> foreign_;
    std::unordered_map<std::string, VertexId> by_name_;
    VertexId initial_ = kNoVertex;
};

GameGraph parse_game(std::string_view text);
std::string serialize_game(const GameGraph& g);

struct Violation {
    enum class Kind { MissingInitial, InitialOwner, Totality, Typing, Alternation, Color, EmptyAlphabet };
    Kind kind;
    VertexId vertex = kNoVertex;
    std::optional<Action> action;
    std::optional<Player> alphabet;  // which alphabet `action` belongs to

    friend bool operator==(const Violation&, const Violation&) = default;
};

std::string_view to_string(Violation::Kind kind);
/// `VIOLATION <kind> <vertex> [<action>]`
std::string describe(const GameGraph& g, const Violation& v);

/// Empty iff the graph is well typed, alternating, total and correctly colored.
std::vector<Violation> validate(const GameGraph& g);

inline constexpr std::string_view kP1ParadiseEntry = "paradise1_a";  // owner 1
inline constexpr std::string_view kP1ParadiseExit = "paradise1_b";   // owner 2
inline constexpr std::string_view kP2ParadiseEntry = "paradise2_a";  // owner 2
inline constexpr std::string_view kP2ParadiseExit = "paradise2_b";   // owner 1

/**
 * Routes every missing (vertex, action) edge to the paradise of the acting
 * player's opponent. Paradise pairs are two-vertex cycles; they are appended
 * (or reused, when vertices with the reserved names exist) only if needed.
 */
GameGraph complete(const GameGraph& g);

/// Returns the vertex of the paradise won by `winner` that a player moving
/// from an owner-`mover` vertex may enter, creating the pair if needed.
VertexId ensure_paradise(GameGraph& g, Player winner, Player mover);

/**
 * An alternating action sequence. Each action is an index into the alphabet of
 * the owner of the vertex it is played from. A finite word has an empty cycle.
 */
struct Word {
    std::vector<Action> prefix;
    std::vector<Action> cycle;

    bool finite() const { return cycle.empty(); }
    friend bool operator==(const Word&, const Word&) = default;
};

class IllegalMove : public std::runtime_error {
public:
    IllegalMove(std::size_t index, const std::string& message);
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// Vertices visited by the finite play of `actions` from `start` (start included).
std::vector<VertexId> play_from(const GameGraph& g, VertexId start, std::span<const Action> actions);

/// Winner of the infinite play generated by a lasso word from `start`.
Player winner_of_lasso(const GameGraph& g, VertexId start, const Word& w);
/// Winner of the play from the initial vertex.
Player winner_of_lasso(const GameGraph& g, const Word& w);

/**
 * Compact successor-list view used by the solvers. Vertices may have any
 * positive out-degree; labels carry the action of each edge.
 */
struct Arena {
    std::vector<Player> owner;
    std::vector<unsigned> color;
    std::vector<std::uint32_t> first;  // size() + 1 offsets into label/target
    std::vector<Action> label;
    std::vector<VertexId> target;

    std::size_t size() const { return owner.size(); }
    std::uint32_t begin(VertexId v) const { return first[v]; }
    std::uint32_t end(VertexId v) const { return first[v + 1]; }
};

/// Arena with every defined edge of `g`.
Arena make_arena(const GameGraph& g);

/// Winner per vertex and a positional strategy (action) per vertex, meaningful
/// where the owner of the vertex wins it.
struct Solution {
    std::vector<Player> winner;
    std::vector<Action> strategy;

    std::vector<VertexId> region(Player p) const;
};

/// Zielonka's recursive algorithm. Throws std::invalid_argument on a non-total graph.
Solution solve_parity(const GameGraph& g);
/// Solves an arena under `objective`; every vertex needs an outgoing edge.
Solution solve_parity(const Arena& arena, Objective objective);

struct Step {
    VertexId vertex;
    Action action;

    friend bool operator==(const Step&, const Step&) = default;
};

/// A finite prefix followed by a cycle whose last step returns to cycle.front().vertex.
struct Lasso {
    std::vector<Step> prefix;
    std::vector<Step> cycle;

    VertexId start() const { return prefix.empty() ? cycle.front().vertex : prefix.front().vertex; }
    Word word() const;
    std::size_t length() const { return prefix.size() + cycle.size(); }
};

struct OnePlayerSolution {
    std::vector<bool> p2_wins;
    std::vector<std::optional<Lasso>> witness;  // present for every Player-2 winning vertex
};

/**
 * Solves a game in which every owner-1 vertex has exactly one outgoing edge.
 * Player 2 wins iff it can steer into a cycle that satisfies the objective.
 * Throws std::invalid_argument when the precondition fails.
 */
OnePlayerSolution solve_one_player(const GameGraph& g);

/// Region-only variant for arenas whose owner-1 vertices have out-degree one.
std::vector<bool> one_player_region(const Arena& arena, Objective objective);
/// Witness for a winning vertex of one_player_region; nullopt when losing.
std::optional<Lasso> one_player_lasso(const Arena& arena, Objective objective, VertexId from);

}  // namespace ktl

#endif
