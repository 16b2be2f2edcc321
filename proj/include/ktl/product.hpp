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

#ifndef KTL_PRODUCT_HPP
#define KTL_PRODUCT_HPP

#include <optional>
#include <vector>

#include "ktl/game.hpp"
#include "ktl/transducer.hpp"

namespace ktl {

/// A product position. The shared sink pair has vertex == kNoVertex.
struct Position {
    VertexId vertex;
    State state;

    bool is_top() const { return vertex == kNoVertex; }
    friend bool operator==(const Position&, const Position&) = default;
};

/**
 * The game in which Player 1 must follow a fixed transducer. Positions are
 * (v, m) pairs named "(v,m)"; off-policy Player-1 actions lead to a shared
 * Player-2 paradise pair ("top" owned by Player 2, "top_1" owned by Player 1).
 */
struct ProductGame {
    GameGraph graph;                  // same alphabets and objective as the base game
    std::vector<Position> positions;  // per product vertex
    VertexId top = kNoVertex;
    VertexId top_1 = kNoVertex;
    std::vector<VertexId> index;      // base vertex * k + state -> product vertex, or kNoVertex
    unsigned k = 0;
    Transducer machine;

    VertexId initial() const { return *graph.initial(); }
    std::optional<VertexId> find(VertexId v, State m) const;
};

struct ProductOptions {
    bool full = false;  // every pair of V x M, not only those reachable from the initial position
};

/// Throws std::invalid_argument when `g` is not total or the alphabets differ in size.
ProductGame build_product(const GameGraph& g, const Transducer& t, ProductOptions options = {});

/// Forward closure from the initial position over all product edges, in BFS order.
std::vector<VertexId> reachable_positions(const ProductGame& p);

/// The product with every off-policy Player-1 edge dropped; owner-1 vertices have out-degree one.
Arena forced_arena(const ProductGame& p);

/// Winning region of Player 2 and a witness lasso for each winning position.
OnePlayerSolution p2_winning_positions(const ProductGame& p);

/// Lasso of length at most twice the product size. Throws std::invalid_argument when `pos` is losing.
Lasso winning_lasso(const ProductGame& p, VertexId pos);

/**
 * The product play of a finite word from the initial position. Stops early
 * (and sets `hit_top`) once the sink pair is entered.
 */
struct ProductPlay {
    std::vector<VertexId> visited;
    bool hit_top = false;
};
ProductPlay play_product(const ProductGame& p, std::span<const Action> word);

/**
 * Shortest input sequence on which t1 and t2 emit different outputs when
 * started from the states reached by the Player-2 actions of `alpha`. Empty
 * optional iff they behave identically from there. Throws
 * std::invalid_argument when either machine disagrees with `alpha`.
 */
std::optional<std::vector<Action>> distinguish_extension(std::span<const Action> alpha, const Transducer& t1, const Transducer& t2);

/**
 * The reachable part of the product with Player 1 on policy, without names.
 * Vertices are numbered in BFS order from the initial position (actions in
 * alphabet order); parent links give shortest access paths.
 */
struct ForcedProduct {
    Arena arena;
    std::vector<Position> positions;
    std::vector<VertexId> parent;  // kNoVertex for the root
    std::vector<Action> via;       // action on the parent edge
};

void build_forced_product(const GameGraph& g, const Transducer& t, ForcedProduct& out, std::vector<VertexId>& scratch_index);
ForcedProduct build_forced_product(const GameGraph& g, const Transducer& t);

/// Actions on the BFS tree path from the root to `v`.
std::vector<Action> access_word(const ForcedProduct& p, VertexId v);

}  // namespace ktl

#endif
