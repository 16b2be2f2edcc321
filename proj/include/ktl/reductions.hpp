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

#ifndef KTL_REDUCTIONS_HPP
#define KTL_REDUCTIONS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ktl/game.hpp"
#include "ktl/liveness.hpp"
#include "ktl/synthesis.hpp"
#include "ktl/transducer.hpp"

namespace ktl {

// ---------------------------------------------------------------------------
// Formulas

/// A literal over the quantified variables: x_i (universal) or y_i (existential), 1-based.
struct QbfLiteral {
    bool existential;
    unsigned index;
    bool negated;

    friend bool operator==(const QbfLiteral&, const QbfLiteral&) = default;
};

/// ∀x1 ∃y1 … ∀xk ∃yk : C1 ∧ … ∧ Cr
struct QbfFormula {
    unsigned k = 0;
    std::vector<std::vector<QbfLiteral>> clauses;

    friend bool operator==(const QbfFormula&, const QbfFormula&) = default;
};

/// Clauses of DIMACS literals over x1..xk.
struct CnfFormula {
    unsigned k = 0;
    std::vector<std::vector<int>> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Throws std::invalid_argument on an empty clause or an out-of-range variable.
void check(const QbfFormula& psi);
void check(const CnfFormula& phi);

/**
 * QDIMACS with strict alternation: the prefix must be `a v 0` / `e w 0` lines,
 * one variable each, starting universal and ending existential. The i-th
 * universal variable becomes x_i, the i-th existential one y_i.
 */
QbfFormula parse_qdimacs(std::string_view text);
std::string serialize_qdimacs(const QbfFormula& psi);

CnfFormula parse_dimacs(std::string_view text);
std::string serialize_dimacs(const CnfFormula& phi);

std::string to_string(const QbfFormula& psi);
std::string to_string(const CnfFormula& phi);

/// values[i] is the value of x_{i+1} (and y_{i+1}).
bool evaluate(const QbfFormula& psi, const std::vector<bool>& x, const std::vector<bool>& y);
bool evaluate(const CnfFormula& phi, const std::vector<bool>& x);

bool qbf_brute_force(const QbfFormula& psi);
/// The satisfying assignment with the smallest binary value (x1 least significant), if any.
std::optional<std::vector<bool>> sat_brute_force(const CnfFormula& phi);

// ---------------------------------------------------------------------------
// Game families

enum class QbfLayout {
    /// The bare construction: a satisfied last clause enters Player 2's
    /// paradise right after Player 2's final y_k.
    Plain,
    /// Adds one Player-1 vertex v_1_{r+1}_bot after the last stage, where e leads
    /// to Player 1's paradise and any x action to Player 2's. Without it a
    /// changed y_k in the last stage can never be punished.
    Checked,
};

/**
 * Reachability game for a QBF: Player 1 first shows the exit action e, then
 * both players assign their variables once, then every clause is checked in a
 * stage where the assignment is replayed. Vertices v_i_j_{top,bot} record
 * whether clause j is satisfied by the values chosen so far. Missing edges go
 * to the opponent's paradise. At most 4k(r+1)+6 vertices.
 */
GameGraph qbf_to_game(const QbfFormula& psi, QbfLayout layout = QbfLayout::Checked);

/**
 * Reachability game for a CNF formula: Player 1 assigns x1..xk once per
 * clause (actions T<i>, F<i>), Player 2 only has the dummy action eps. An
 * unsatisfied clause leads to Player 2's paradise, satisfying all clauses to
 * Player 1's paradise.
 */
GameGraph cnf_to_game(const CnfFormula& phi);

/// Vertex name of the phase-3 vertex for step i (1..2k) of stage j.
std::string qbf_stage_vertex(unsigned i, unsigned j, bool satisfied);
/// Vertex names in the CNF game; step i in 1..k of clause j.
std::string cnf_x_vertex(unsigned i, unsigned j, bool satisfied);
std::string cnf_y_vertex(unsigned i, unsigned j, bool satisfied);

/**
 * Büchi game of a robot (Player 2) and a human (Player 1) sharing a workspace
 * with `lanes` charging stations. Cells: robot start R0, lane entries E<i>,
 * stations S<i>, lane exits X<i>, human start H0. Each turn the mover stays,
 * enters lane i from a start cell, or steps forward (lane<i>) or back along
 * its current lane. Moving into the other agent's cell is blocked. An illegal
 * robot move also leaves the robot in place, while an illegal human move leads
 * to Player 2's paradise. A Player-1 vertex has color 2 when the robot has just
 * stayed on a station whose lane the human is not on.
 */
GameGraph robot_scenario(unsigned lanes = 3);

// ---------------------------------------------------------------------------
// Reduction checks

/// The k-transducer that replays a fixed assignment once per clause.
Transducer assignment_transducer(const GameGraph& cnf_game, const std::vector<bool>& assignment);

struct CnfReductionCheck {
    std::optional<std::vector<bool>> satisfying;
    LivenessVerdict verdict;
    bool agrees = false;           // unsat <=> live (false when undecided)
    bool witness_verified = true;  // checker witness passes verify_witness
    bool assignment_verified = true;  // the assignment machine is a counterexample
};

CnfReductionCheck check_cnf_reduction(const CnfFormula& phi, const LivenessOptions& options = {});

/**
 * The (k+1)-state environment for an invalid formula:
 * state 0 plays e, state i plays the falsifying value of x_i for the expected
 * answers `y`, and any other answer sends the machine back to state 0.
 */
Transducer counter_transducer(const GameGraph& qbf_game, const QbfFormula& psi, const std::vector<bool>& y);

/// Player 1's falsifying values x for the answers y (a winning choice in ∃x∀y¬φ), if ψ is invalid.
std::optional<std::vector<bool>> falsifying_choice(const QbfFormula& psi, const std::vector<bool>& y);

struct CounterStrategyResult {
    /// For every answer vector y, the product with the counter machine makes
    /// the initial position losing for Player 2 once its phase-2 answers are y.
    bool beats_every_answer = false;
    /// Some single counter machine makes the initial position losing in its
    /// unrestricted product.
    bool single_machine_wins = false;
    std::optional<std::vector<bool>> failing_answer;  // first y for which beats_every_answer fails
};

CounterStrategyResult check_counter_strategy(const QbfFormula& psi, QbfLayout layout = QbfLayout::Checked);

struct QbfReductionCheck {
    bool valid = false;
    BoundedResult bounded;
    bool game_agrees = false;  // valid <=> p2 wins (false when undecided)
    std::optional<CounterStrategyResult> counter;  // for invalid formulas
};

QbfReductionCheck check_qbf_reduction(const QbfFormula& psi, const BoundedOptions& options = {}, QbfLayout layout = QbfLayout::Checked);

}  // namespace ktl

#endif
