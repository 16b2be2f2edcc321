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

#include <boost/container_hash/hash.hpp>
#include <unordered_map>

#include "ktl/synthesis.hpp"

namespace ktl {

std::string_view to_string(BoundedOutcome outcome)
{
    switch (outcome) {
    case BoundedOutcome::P2Wins: return "p2-wins";
    case BoundedOutcome::P1Wins: return "p1-wins";
    case BoundedOutcome::UndecidedAtCap: return "undecided-at-cap";
    }
    return "undecided-at-cap";
}

namespace {

struct PositionHash {
    std::size_t operator()(const BeliefPosition& p) const
    {
        std::size_t h = p.vertex;
        for (const auto& [i, m] : p.beliefs) {
            boost::hash_combine(h, i);
            boost::hash_combine(h, m);
        }
        return h;
    }
};

}  // namespace

BoundedResult solve_bounded(const GameGraph& g, unsigned k, const BoundedOptions& options)
{
    if (!g.is_total()) throw std::invalid_argument("solve_bounded needs a total game (run complete first)");
    if (!g.initial()) throw std::invalid_argument("game has no initial vertex");
    if (k == 0) throw std::invalid_argument("k must be positive");
    const auto sigma = static_cast<unsigned>(g.alphabet(Player::One).size());
    const auto gamma = static_cast<unsigned>(g.alphabet(Player::Two).size());

    BoundedResult result;
    if (count_transducers(k, sigma, gamma) > options.machine_cap) return result;
    TransducerOdometer odo(k, sigma, gamma);
    do {
        if (!options.dedupe || is_behavioral_representative(odo.current())) result.machines.push_back(odo.current());
    } while (odo.advance());
    const auto& machines = result.machines;

    std::unordered_map<BeliefPosition, VertexId, PositionHash> ids;
    auto& positions = result.positions;
    auto& arena = result.arena;
    auto intern = [&](BeliefPosition p) {
        auto [it, fresh] = ids.emplace(std::move(p), static_cast<VertexId>(positions.size()));
        if (fresh) positions.push_back(it->first);
        return it->second;
    };

    Belief initial;
    for (std::uint32_t i = 0; i < machines.size(); ++i) initial.emplace_back(i, machines[i].initial());
    intern({*g.initial(), std::move(initial)});

    arena.first.push_back(0);
    for (VertexId x = 0; x < positions.size(); ++x) {
        if (positions.size() > options.position_cap) return result;
        VertexId v = positions[x].vertex;
        arena.owner.push_back(g.owner(v));
        arena.color.push_back(g.color(v));
        auto edge = [&](Action a, BeliefPosition to) {
            VertexId id = intern(std::move(to));
            arena.label.push_back(a);
            arena.target.push_back(id);
        };
        if (g.objective() == Objective::Reachability && g.color(v) == 2) {
            // Won already; the solver makes targets absorbing.
            arena.label.push_back(0);
            arena.target.push_back(x);
        } else if (g.owner(v) == Player::One) {
            // Only actions some consistent machine would output are available.
            std::vector<Belief> split(sigma);
            for (const auto& [i, m] : positions[x].beliefs) split[machines[i].label(m)].emplace_back(i, m);
            for (Action a = 0; a < sigma; ++a)
                if (!split[a].empty()) edge(a, {g.successor(v, a), std::move(split[a])});
        } else {
            for (Action b = 0; b < gamma; ++b) {
                Belief next;
                next.reserve(positions[x].beliefs.size());
                for (const auto& [i, m] : positions[x].beliefs) next.emplace_back(i, machines[i].next(m, b));
                edge(b, {g.successor(v, b), std::move(next)});
            }
        }
        arena.first.push_back(static_cast<std::uint32_t>(arena.target.size()));
    }

    result.solution = solve_parity(arena, g.objective());
    result.outcome = result.solution.winner[0] == Player::Two ? BoundedOutcome::P2Wins : BoundedOutcome::P1Wins;
    return result;
}

}  // namespace ktl
