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

#ifndef KTL_LIVENESS_HPP
#define KTL_LIVENESS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ktl/game.hpp"
#include "ktl/product.hpp"
#include "ktl/transducer.hpp"

namespace ktl {

/// A transducer, a word it can be driven along, and the losing position reached.
struct LivenessWitness {
    Transducer machine;
    TransducerIndex index;
    std::vector<Action> alpha;  // starts with a Player-1 action; Player-1 actions follow the machine
    Position position;
};

enum class LiveOutcome { Live, NotLive, UndecidedAtCap };

std::string_view to_string(LiveOutcome outcome);

struct LivenessStats {
    std::uint64_t examined = 0;         // ordinals visited
    std::uint64_t products_solved = 0;  // machines actually checked
    double seconds = 0;
};

struct LivenessVerdict {
    LiveOutcome outcome = LiveOutcome::Live;
    std::optional<LivenessWitness> witness;
    LivenessStats stats;
    BigCount total;  // size of the raw stream

    bool live() const { return outcome == LiveOutcome::Live; }
};

inline constexpr std::uint64_t kDefaultCap = 10'000'000;

struct LivenessOptions {
    bool dedupe = false;
    unsigned jobs = 1;
    /// Finish every block below the first hit so the lowest-ordinal witness wins.
    bool deterministic = true;
    /// Ordinals scanned at most; beyond it the result is NotLive (if a witness was
    /// found) or UndecidedAtCap.
    std::uint64_t cap = kDefaultCap;
};

/// Checks a single machine: the first reachable losing position in BFS order, if any.
std::optional<LivenessWitness> check_transducer(const GameGraph& g, const Transducer& t);

/// Throws std::invalid_argument when `g` is not total or has no initial vertex.
LivenessVerdict check_k_live(const GameGraph& g, unsigned k, const LivenessOptions& options = {});

/// Independent re-check of a witness through the named product construction.
bool verify_witness(const GameGraph& g, unsigned k, const LivenessWitness& w);

/**
 * Lowest-ordinal k-transducer agreeing with every given finite word, if any.
 * Words must be alternating and start with a Player-1 action.
 */
std::optional<Transducer> word_in_Ak(std::span<const Word> words, unsigned k, unsigned outputs, unsigned inputs);
std::optional<Transducer> word_in_Ak(const Word& w, unsigned k, unsigned outputs, unsigned inputs);

}  // namespace ktl

#endif
