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

#ifndef KTL_SYNTHESIS_HPP
#define KTL_SYNTHESIS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ktl/game.hpp"
#include "ktl/liveness.hpp"
#include "ktl/product.hpp"
#include "ktl/transducer.hpp"

namespace ktl {

// ---------------------------------------------------------------------------
// Belief-set solver

/// (machine index, state) pairs consistent with the history, sorted.
using Belief = std::vector<std::pair<std::uint32_t, State>>;

struct BeliefPosition {
    VertexId vertex;
    Belief beliefs;

    friend bool operator==(const BeliefPosition&, const BeliefPosition&) = default;
};

enum class BoundedOutcome { P2Wins, P1Wins, UndecidedAtCap };

std::string_view to_string(BoundedOutcome outcome);

struct BoundedOptions {
    std::uint64_t position_cap = 1'000'000;
    std::uint64_t machine_cap = kDefaultCap;
    /// Keep one machine per behavior; the belief game is unchanged up to relabeling.
    bool dedupe = false;
};

struct BoundedResult {
    BoundedOutcome outcome = BoundedOutcome::UndecidedAtCap;
    std::vector<Transducer> machines;
    std::vector<BeliefPosition> positions;  // position 0 is the initial belief
    Arena arena;
    Solution solution;

    bool p2_wins() const { return outcome == BoundedOutcome::P2Wins; }
};

/**
 * Decides whether Player 2 wins against every k-transducer environment by
 * solving the knowledge game over (vertex, consistent configurations).
 */
BoundedResult solve_bounded(const GameGraph& g, unsigned k, const BoundedOptions& options = {});

// ---------------------------------------------------------------------------
// Controllers

/// Player-2 decision procedure driven by the observed Player-1 actions.
class Controller {
public:
    virtual ~Controller() = default;
    /// Starts a fresh play from the initial vertex.
    virtual void reset() = 0;
    /// Player 1 just played `observed`; returns Player 2's answer.
    virtual Action respond(Action observed) = 0;
    /// Everything that determines future behavior except an append-only log.
    virtual std::string configuration() const = 0;
    /// (ordinal, |M'|) for controllers that hold a hypothesis.
    virtual std::optional<std::pair<std::uint64_t, std::size_t>> hypothesis() const { return std::nullopt; }
};

/// Plays a fixed cyclic sequence of Player-2 actions.
class ScriptController : public Controller {
public:
    explicit ScriptController(std::vector<Action> script);
    void reset() override { cursor_ = 0; }
    Action respond(Action observed) override;
    std::string configuration() const override { return std::to_string(cursor_); }

private:
    std::vector<Action> script_;
    std::size_t cursor_ = 0;
};

enum class ControllerMode {
    LogReplay,    // a new hypothesis is tested against the logged history
    StrictSpace,  // no log; candidates are the states m with (v, m) reachable in the product
};

enum class ControllerPhase { Scanning, Tracking };

/**
 * Iterates over the k-transducers in ordinal order. For the current
 * hypothesis it keeps the candidate states M', conjectures the least one and
 * follows a winning lasso from the current product position. Contradicted
 * candidates are dropped; when none remain the next machine is tried, wrapping
 * around after the last.
 */
class AdaptiveController : public Controller {
public:
    AdaptiveController(const GameGraph& g, unsigned k, ControllerMode mode = ControllerMode::LogReplay);

    void reset() override;
    Action respond(Action observed) override;
    std::string configuration() const override;
    std::optional<std::pair<std::uint64_t, std::size_t>> hypothesis() const override
    {
        return std::make_pair(ordinal_, candidates_.size());
    }

    std::uint64_t ordinal() const { return ordinal_; }
    const std::vector<State>& candidates() const { return candidates_; }
    std::optional<State> conjecture() const { return conjecture_; }
    ControllerPhase phase() const { return phase_; }
    /// Hypothesis switches since reset.
    std::uint64_t switches() const { return switches_; }

private:
    void load_hypothesis();
    void next_hypothesis();
    bool start_lasso();
    bool follows_lasso(Action observed) const;

    const GameGraph* g_;
    unsigned k_;
    ControllerMode mode_;
    std::uint64_t count_;

    std::uint64_t ordinal_ = 0;
    Transducer machine_;
    std::optional<ProductGame> product_;
    std::vector<bool> winning_;
    std::vector<State> candidates_;
    std::optional<State> conjecture_;
    std::optional<Lasso> lasso_;
    VertexId lasso_start_ = kNoVertex;
    std::size_t cursor_ = 0;  // index into prefix ++ cycle
    ControllerPhase phase_ = ControllerPhase::Scanning;
    std::uint64_t switches_ = 0;

    VertexId vertex_ = kNoVertex;
    std::vector<Action> log_;
};

struct HypothesisRecord {
    std::uint64_t step;
    std::uint64_t ordinal;
    std::size_t candidates;
};

struct Trace {
    std::vector<Action> actions;     // alternating, starting with Player 1
    std::vector<VertexId> vertices;  // vertices[i] is where actions[i] was played
    std::optional<Player> winner;    // empty when undecided after max_steps
    std::uint64_t steps = 0;         // Player-2 actions issued
    std::vector<HypothesisRecord> hypothesis_log;
    std::optional<Word> lasso;  // the closed play, when a configuration repeated
};

/**
 * Plays the hidden machine (Player 1) against the controller from the initial
 * vertex until the winner is determined: a color-2 vertex in a reachability
 * game, a repeated joint configuration, or max_steps Player-2 actions.
 */
Trace simulate(const GameGraph& g, Controller& controller, const Transducer& hidden, std::uint64_t max_steps);

/// count(k, Σ, Γ) · k · 4·n·k
BigCount steps_bound(std::size_t n, unsigned k, unsigned sigma, unsigned gamma);

/// `STEP <i> P<1|2> <action> <vertex> [ordinal=<o> |M'|=<c>]` per half-step.
std::string format_trace(const GameGraph& g, const Trace& trace);

}  // namespace ktl

#endif
