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

#ifndef KTL_RANDOM_HPP
#define KTL_RANDOM_HPP

#include <cstdint>
#include <random>

#include "ktl/game.hpp"
#include "ktl/reductions.hpp"
#include "ktl/transducer.hpp"

namespace ktl {

using Rng = std::mt19937_64;

struct RandomGameOptions {
    unsigned vertices = 8;  // at least 2; split evenly between the players
    unsigned sigma = 2;
    unsigned gamma = 2;
    Objective objective = Objective::Reachability;
    unsigned max_color = 4;       // parity games only
    double target_density = 0.2;  // share of color-2 vertices for reachability and Büchi
};

/// A total alternating game with initial vertex 0 owned by Player 1.
GameGraph random_game(const RandomGameOptions& options, Rng& rng);

/// Uniform over all k-transducers with the given alphabet sizes (the count must fit in 64 bits).
Transducer random_transducer(unsigned k, unsigned outputs, unsigned inputs, Rng& rng);

/// Clauses of width 1..max_width over distinct variables.
CnfFormula random_cnf(unsigned k, unsigned clauses, unsigned max_width, Rng& rng);
QbfFormula random_qbf(unsigned k, unsigned clauses, unsigned max_width, Rng& rng);

}  // namespace ktl

#endif
