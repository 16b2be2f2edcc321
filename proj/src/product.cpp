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

#include "ktl/product.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ktl {

namespace {

void require_compatible(const GameGraph& g, const Transducer& t)
{
    if (!g.is_total()) throw std::invalid_argument("product needs a total base game (run complete first)");
    if (!g.initial()) throw std::invalid_argument("base game has no initial vertex");
    if (t.output_size() != g.alphabet(Player::One).size() || t.input_size() != g.alphabet(Player::Two).size())
        throw std::invalid_argument("transducer alphabets do not match the game");
}

}  // namespace

std::optional<VertexId> ProductGame::find(VertexId v, State m) const
{
    if (v == kNoVertex) return top;
    auto id = index.at(static_cast<std::size_t>(v) * k + m);
    if (id == kNoVertex) return std::nullopt;
    return id;
}

ProductGame build_product(const GameGraph& g, const Transducer& t, ProductOptions options)
{
    require_compatible(g, t);
    ProductGame p;
    p.k = t.states();
    p.machine = t;
    p.graph = GameGraph(g.objective(), g.alphabet(Player::One), g.alphabet(Player::Two));
    p.index.assign(g.size() * p.k, kNoVertex);

    auto add = [&](VertexId v, State m) {
        auto& slot = p.index[static_cast<std::size_t>(v) * p.k + m];
        if (slot == kNoVertex) {
            slot = p.graph.add_vertex("(" + g.vertex(v).name + "," + std::to_string(m) + ")", g.owner(v), g.color(v));
            p.positions.push_back({v, m});
        }
        return slot;
    };

    VertexId root = add(*g.initial(), t.initial());
    if (options.full)
        for (VertexId v = 0; v < g.size(); ++v)
            for (State m = 0; m < p.k; ++m) add(v, m);

    // Positions are appended while edges are filled in, so the loop also
    // performs the reachability closure.
    std::vector<std::pair<VertexId, std::pair<Action, Position>>> pending;
    for (VertexId x = 0; x < p.positions.size(); ++x) {
        auto [v, m] = p.positions[x];
        if (g.owner(v) == Player::One) {
            Action on = t.label(m);
            for (Action a = 0; a < g.alphabet(Player::One).size(); ++a)
                if (a == on)
                    pending.push_back({x, {a, {g.successor(v, a), m}}});
                else
                    pending.push_back({x, {a, {kNoVertex, m}}});
            add(g.successor(v, on), m);
        } else {
            for (Action b = 0; b < g.alphabet(Player::Two).size(); ++b) {
                Position to{g.successor(v, b), t.next(m, b)};
                pending.push_back({x, {b, to}});
                add(to.vertex, to.state);
            }
        }
    }

    bool needs_top = std::any_of(pending.begin(), pending.end(), [](const auto& e) { return e.second.second.is_top(); });
    if (needs_top) {
        p.top = p.graph.add_vertex("top", Player::Two, 2);
        p.top_1 = p.graph.add_vertex("top_1", Player::One, 2);
        p.positions.push_back({kNoVertex, 0});
        p.positions.push_back({kNoVertex, 0});
        for (Action b = 0; b < g.alphabet(Player::Two).size(); ++b) p.graph.set_edge(p.top, b, p.top_1);
        for (Action a = 0; a < g.alphabet(Player::One).size(); ++a) p.graph.set_edge(p.top_1, a, p.top);
    }
    for (const auto& [x, edge] : pending) {
        auto [a, to] = edge;
        p.graph.set_edge(x, a, to.is_top() ? p.top : *p.find(to.vertex, to.state));
    }
    p.graph.set_initial(root);
    return p;
}

std::vector<VertexId> reachable_positions(const ProductGame& p)
{
    std::vector<char> seen(p.graph.size(), 0);
    std::vector<VertexId> order{p.initial()};
    seen[p.initial()] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (VertexId s : p.graph.successors(order[i]))
            if (!seen[s]) {
                seen[s] = 1;
                order.push_back(s);
            }
    return order;
}

Arena forced_arena(const ProductGame& p)
{
    Arena a;
    a.first.push_back(0);
    for (VertexId x = 0; x < p.graph.size(); ++x) {
        a.owner.push_back(p.graph.owner(x));
        a.color.push_back(p.graph.color(x));
        auto succ = p.graph.successors(x);
        if (p.graph.owner(x) == Player::One) {
            // The sink keeps one edge; other owner-1 positions keep the policy edge.
            Action on = x == p.top_1 ? 0 : p.machine.label(p.positions[x].state);
            a.label.push_back(on);
            a.target.push_back(succ[on]);
        } else {
            for (Action b = 0; b < succ.size(); ++b) {
                a.label.push_back(b);
                a.target.push_back(succ[b]);
            }
        }
        a.first.push_back(static_cast<std::uint32_t>(a.target.size()));
    }
    return a;
}

OnePlayerSolution p2_winning_positions(const ProductGame& p)
{
    Arena a = forced_arena(p);
    OnePlayerSolution out;
    out.p2_wins = one_player_region(a, p.graph.objective());
    out.witness.resize(a.size());
    for (VertexId x = 0; x < a.size(); ++x)
        if (out.p2_wins[x]) out.witness[x] = one_player_lasso(a, p.graph.objective(), x);
    return out;
}

Lasso winning_lasso(const ProductGame& p, VertexId pos)
{
    Arena a = forced_arena(p);
    auto lasso = one_player_lasso(a, p.graph.objective(), pos);
    if (!lasso) throw std::invalid_argument("position " + p.graph.vertex(pos).name + " is not winning for Player 2");
    return *lasso;
}

ProductPlay play_product(const ProductGame& p, std::span<const Action> word)
{
    ProductPlay out;
    VertexId x = p.initial();
    out.visited.push_back(x);
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto succ = p.graph.successors(x);
        if (word[i] >= succ.size()) throw IllegalMove(i, "action outside the mover's alphabet");
        x = succ[word[i]];
        out.visited.push_back(x);
        if (x == p.top || x == p.top_1) {
            out.hit_top = true;
            break;
        }
    }
    return out;
}

std::optional<std::vector<Action>> distinguish_extension(std::span<const Action> alpha, const Transducer& t1, const Transducer& t2)
{
    if (t1.input_size() != t2.input_size()) throw std::invalid_argument("transducers read different input alphabets");
    Word w{{alpha.begin(), alpha.end()}, {}};
    if (!agrees(w, t1) || !agrees(w, t2)) throw std::invalid_argument("both transducers must agree with alpha");

    State s1 = t1.initial(), s2 = t2.initial();
    for (std::size_t i = 1; i < alpha.size(); i += 2) {
        s1 = t1.next(s1, alpha[i]);
        s2 = t2.next(s2, alpha[i]);
    }
    const unsigned k2 = t2.states();
    auto key = [k2](State a, State b) { return static_cast<std::size_t>(a) * k2 + b; };
    std::vector<std::size_t> parent(static_cast<std::size_t>(t1.states()) * k2, ~std::size_t{0});
    std::vector<Action> via(parent.size(), 0);
    std::deque<std::pair<State, State>> queue{{s1, s2}};
    parent[key(s1, s2)] = key(s1, s2);
    while (!queue.empty()) {
        auto [a, b] = queue.front();
        queue.pop_front();
        if (t1.label(a) != t2.label(b)) {
            std::vector<Action> seq;
            for (auto at = key(a, b); at != key(s1, s2); at = parent[at]) seq.push_back(via[at]);
            std::reverse(seq.begin(), seq.end());
            return seq;
        }
        for (Action x = 0; x < t1.input_size(); ++x) {
            State na = t1.next(a, x), nb = t2.next(b, x);
            if (parent[key(na, nb)] != ~std::size_t{0}) continue;
            parent[key(na, nb)] = key(a, b);
            via[key(na, nb)] = x;
            queue.emplace_back(na, nb);
        }
    }
    return std::nullopt;
}

void build_forced_product(const GameGraph& g, const Transducer& t, ForcedProduct& out, std::vector<VertexId>& index)
{
    const unsigned k = t.states();
    index.assign(g.size() * k, kNoVertex);
    auto& a = out.arena;
    a.owner.clear();
    a.color.clear();
    a.first.assign(1, 0);
    a.label.clear();
    a.target.clear();
    out.positions.clear();
    out.parent.clear();
    out.via.clear();

    auto visit = [&](VertexId v, State m, VertexId from, Action act) {
        auto& slot = index[static_cast<std::size_t>(v) * k + m];
        if (slot == kNoVertex) {
            slot = static_cast<VertexId>(out.positions.size());
            out.positions.push_back({v, m});
            out.parent.push_back(from);
            out.via.push_back(act);
            a.owner.push_back(g.owner(v));
            a.color.push_back(g.color(v));
        }
        return slot;
    };
    visit(*g.initial(), t.initial(), kNoVertex, 0);
    // Positions are numbered in discovery order, so edges can be appended in
    // the same pass and the CSR offsets stay sorted.
    for (VertexId x = 0; x < out.positions.size(); ++x) {
        auto [v, m] = out.positions[x];
        if (g.owner(v) == Player::One) {
            Action on = t.label(m);
            VertexId to = visit(g.successor(v, on), m, x, on);
            a.label.push_back(on);
            a.target.push_back(to);
        } else {
            auto succ = g.successors(v);
            for (Action b = 0; b < succ.size(); ++b) {
                VertexId to = visit(succ[b], t.next(m, b), x, b);
                a.label.push_back(b);
                a.target.push_back(to);
            }
        }
        a.first.push_back(static_cast<std::uint32_t>(a.target.size()));
    }
}

ForcedProduct build_forced_product(const GameGraph& g, const Transducer& t)
{
    require_compatible(g, t);
    ForcedProduct out;
    std::vector<VertexId> index;
    build_forced_product(g, t, out, index);
    return out;
}

std::vector<Action> access_word(const ForcedProduct& p, VertexId v)
{
    std::vector<Action> word;
    for (; p.parent[v] != kNoVertex; v = p.parent[v]) word.push_back(p.via[v]);
    std::reverse(word.begin(), word.end());
    return word;
}

}  // namespace ktl
