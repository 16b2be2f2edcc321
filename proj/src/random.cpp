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
#include <numeric>

#include "ktl/random.hpp"

namespace ktl {

namespace {

unsigned uniform(Rng& rng, unsigned lo, unsigned hi)
{
    return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

// `width` distinct variables out of 1..n, in increasing order.
std::vector<unsigned> pick_variables(unsigned n, unsigned width, Rng& rng)
{
    std::vector<unsigned> vars(n);
    std::iota(vars.begin(), vars.end(), 1u);
    std::shuffle(vars.begin(), vars.end(), rng);
    vars.resize(std::min(width, n));
    std::sort(vars.begin(), vars.end());
    return vars;
}

}  // namespace

GameGraph random_game(const RandomGameOptions& options, Rng& rng)
{
    if (options.vertices < 2 || options.sigma == 0 || options.gamma == 0) throw std::invalid_argument("degenerate random game options");
    std::vector<std::string> sigma, gamma;
    for (unsigned a = 0; a < options.sigma; ++a) sigma.push_back("a" + std::to_string(a));
    for (unsigned b = 0; b < options.gamma; ++b) gamma.push_back("b" + std::to_string(b));
    GameGraph g(options.objective, sigma, gamma);

    const unsigned ones = (options.vertices + 1) / 2;
    std::bernoulli_distribution target(options.target_density);
    std::vector<VertexId> p1, p2;
    for (unsigned i = 0; i < options.vertices; ++i) {
        Player owner = i < ones ? Player::One : Player::Two;
        unsigned color = options.objective == Objective::Parity ? uniform(rng, 0, options.max_color) : target(rng) ? 2 : 1;
        VertexId v = g.add_vertex("v" + std::to_string(i), owner, color);
        (owner == Player::One ? p1 : p2).push_back(v);
    }
    g.set_initial(0);
    for (VertexId v : p1)
        for (Action a = 0; a < options.sigma; ++a) g.set_edge(v, a, p2[uniform(rng, 0, static_cast<unsigned>(p2.size()) - 1)]);
    for (VertexId v : p2)
        for (Action b = 0; b < options.gamma; ++b) g.set_edge(v, b, p1[uniform(rng, 0, static_cast<unsigned>(p1.size()) - 1)]);
    return g;
}

Transducer random_transducer(unsigned k, unsigned outputs, unsigned inputs, Rng& rng)
{
    BigCount count = count_transducers(k, outputs, inputs);
    if (count > BigCount(std::numeric_limits<std::uint64_t>::max())) throw std::overflow_error("too many transducers");
    auto n = count.convert_to<std::uint64_t>();
    return decode({std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng)}, k, outputs, inputs);
}

CnfFormula random_cnf(unsigned k, unsigned clauses, unsigned max_width, Rng& rng)
{
    CnfFormula phi{k, {}};
    for (unsigned j = 0; j < clauses; ++j) {
        std::vector<int> clause;
        for (unsigned v : pick_variables(k, uniform(rng, 1, max_width), rng)) clause.push_back(uniform(rng, 0, 1) ? int(v) : -int(v));
        phi.clauses.push_back(std::move(clause));
    }
    return phi;
}

QbfFormula random_qbf(unsigned k, unsigned clauses, unsigned max_width, Rng& rng)
{
    QbfFormula psi{k, {}};
    for (unsigned j = 0; j < clauses; ++j) {
        std::vector<QbfLiteral> clause;
        // Variables 1..2k: odd ones are x, even ones y.
        for (unsigned v : pick_variables(2 * k, uniform(rng, 1, max_width), rng))
            clause.push_back({v % 2 == 0, (v + 1) / 2, uniform(rng, 0, 1) == 1});
        psi.clauses.push_back(std::move(clause));
    }
    return psi;
}

}  // namespace ktl
