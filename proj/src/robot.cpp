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

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>

#include "ktl/reductions.hpp"

namespace ktl {

GameGraph robot_scenario(unsigned lanes)
{
    if (lanes < 2) throw std::invalid_argument("robot scenario needs at least two lanes");
    const unsigned cells = 3 * lanes + 2;
    const unsigned R0 = 0, H0 = cells - 1;
    auto entry = [](unsigned i) { return 1 + i; };                 // E<i+1>
    auto station = [lanes](unsigned i) { return 1 + lanes + i; };  // S<i+1>
    auto exit_cell = [lanes](unsigned i) { return 1 + 2 * lanes + i; };
    auto lane_of = [lanes, H0](unsigned c) { return c == R0 || c == H0 ? 0u : (c - 1) % lanes + 1; };
    auto cell_name = [&](unsigned c) -> std::string {
        if (c == R0) return "R0";
        if (c == H0) return "H0";
        unsigned lane = (c - 1) % lanes + 1;
        const char* kind = c <= lanes ? "E" : c <= 2 * lanes ? "S" : "X";
        return kind + std::to_string(lane);
    };

    // Actions: stay, lane1..laneN, back.
    std::vector<std::string> sigma{"h_stay"}, gamma{"r_stay"};
    for (unsigned i = 1; i <= lanes; ++i) {
        sigma.push_back("h_lane" + std::to_string(i));
        gamma.push_back("r_lane" + std::to_string(i));
    }
    sigma.push_back("h_back");
    gamma.push_back("r_back");
    const Action stay = 0, back = lanes + 1;

    // Cells along lane i in the mover's forward direction: start, entry, station, exit, goal.
    auto move = [&](unsigned c, Action a, bool robot) -> std::optional<unsigned> {
        if (a == stay) return c;
        if (c == R0 || c == H0) {
            if (a == back) return std::nullopt;
            unsigned lane = a - 1;
            return c == R0 ? entry(lane) : exit_cell(lane);
        }
        unsigned lane = (c - 1) % lanes;
        std::array<unsigned, 5> path{R0, entry(lane), station(lane), exit_cell(lane), H0};
        if (!robot) std::reverse(path.begin(), path.end());
        auto at = static_cast<unsigned>(std::find(path.begin(), path.end(), c) - path.begin());
        if (a == back) return path[at - 1];
        if (a == 1 + lane) return path[at + 1];
        return std::nullopt;
    };

    GameGraph g(Objective::Buchi, sigma, gamma);
    struct Key {
        bool robot_turn;
        unsigned r, h;
        bool charged;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, VertexId> ids;
    std::vector<Key> queue;
    auto intern = [&](Key key) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        std::string name = key.robot_turn ? "p2_" + cell_name(key.r) + "_" + cell_name(key.h)
                                          : "p1_" + cell_name(key.r) + "_" + cell_name(key.h) + "_" + (key.charged ? "1" : "0");
        VertexId v = g.add_vertex(name, key.robot_turn ? Player::Two : Player::One, key.charged ? 2 : 1);
        ids.emplace(key, v);
        queue.push_back(key);
        return v;
    };
    g.set_initial(intern({false, R0, H0, false}));
    for (std::size_t q = 0; q < queue.size(); ++q) {
        Key key = queue[q];
        VertexId v = ids.at(key);
        if (!key.robot_turn) {
            for (Action a = 0; a < sigma.size(); ++a) {
                auto h = move(key.h, a, false);
                if (!h) continue;  // completed to Player 2's paradise
                unsigned to = *h == key.r ? key.h : *h;  // blocked by the robot
                g.set_edge(v, a, intern({true, key.r, to, false}));
            }
        } else {
            // The robot never loses for good: illegal or blocked moves keep it in place.
            for (Action b = 0; b < gamma.size(); ++b) {
                auto r = move(key.r, b, true);
                unsigned to = r && *r != key.h ? *r : key.r;
                bool on_station = key.r >= station(0) && key.r <= station(lanes - 1);
                bool charged = b == stay && on_station && lane_of(key.h) != lane_of(key.r);
                g.set_edge(v, b, intern({false, to, key.h, charged}));
            }
        }
    }
    return complete(g);
}

}  // namespace ktl
