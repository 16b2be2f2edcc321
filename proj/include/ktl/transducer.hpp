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

#ifndef KTL_TRANSDUCER_HPP
#define KTL_TRANSDUCER_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ktl/game.hpp"

namespace ktl {

using State = std::uint32_t;
using BigCount = boost::multiprecision::cpp_int;

/**
 * A Moore machine modelling a bounded environment: it reads Player-2 actions
 * (inputs) and every state is labeled with a Player-1 action (output).
 * Symbols are alphabet indices; textual names live with the game or file.
 */
class Transducer {
public:
    Transducer() = default;
    /// k states, all labeled with output 0, all transitions to state 0.
    Transducer(unsigned k, unsigned outputs, unsigned inputs);

    unsigned states() const { return k_; }
    unsigned output_size() const { return outputs_; }
    unsigned input_size() const { return inputs_; }
    State initial() const { return initial_; }
    Action label(State m) const { return labels_[m]; }
    State next(State m, Action input) const { return next_[m * inputs_ + input]; }

    void set_initial(State m);
    void set_label(State m, Action output);
    void set_next(State m, Action input, State target);

    /// Raw digit access in encoding order: labels, then transitions row-major.
    std::span<const State> transitions() const { return next_; }
    std::span<const Action> labels() const { return labels_; }

    friend bool operator==(const Transducer&, const Transducer&) = default;

private:
    friend class TransducerOdometer;
    unsigned k_ = 0;
    unsigned outputs_ = 0;
    unsigned inputs_ = 0;
    State initial_ = 0;
    std::vector<Action> labels_;
    std::vector<State> next_;
};

struct RunResult {
    State final_state;
    Action initial_output;       // L(s), the output before any input
    std::vector<Action> outputs;  // outputs[i] = L(state after inputs[0..i])
};

/// Feeds `inputs` to the machine. Throws std::out_of_range on an unknown input symbol.
RunResult run(const Transducer& t, std::span<const Action> inputs);

/**
 * The Player-1 action the machine plays after `history`, an alternating word
 * that is empty or ends with a Player-2 action. Throws std::invalid_argument
 * when the history ends with a Player-1 action.
 */
Action induced_strategy(const Transducer& t, std::span<const Action> history);

struct Agreement {
    bool agrees;
    std::optional<std::size_t> first_disagreement;  // index into the (unrolled) word

    explicit operator bool() const { return agrees; }
};

/**
 * Checks that every Player-1 action of the word (even positions) equals the
 * machine's output on the preceding Player-2 actions. Lasso words are checked
 * until (position in cycle, machine state) repeats. The cycle must have even
 * length. Throws std::out_of_range on symbols outside the machine's alphabets.
 */
Agreement agrees(const Word& w, const Transducer& t);

/// |Σ|^k · k^(k·|Γ|): machines with states {0..k-1} and initial state 0.
BigCount count_transducers(unsigned k, unsigned outputs, unsigned inputs);

struct TransducerIndex {
    std::uint64_t ordinal = 0;
    friend auto operator<=>(const TransducerIndex&, const TransducerIndex&) = default;
};

/// Mixed-radix encoding; requires initial state 0. Throws std::overflow_error
/// when the ordinal does not fit 64 bits.
TransducerIndex canonical_ordinal(const Transducer& t);
Transducer decode(TransducerIndex index, unsigned k, unsigned outputs, unsigned inputs);

/**
 * Steps through machines in increasing ordinal order. The last transition
 * digit changes fastest; label of state 0 is the most significant digit.
 */
class TransducerOdometer {
public:
    TransducerOdometer(unsigned k, unsigned outputs, unsigned inputs, std::uint64_t start = 0);
    const Transducer& current() const { return t_; }
    std::uint64_t ordinal() const { return ordinal_; }
    /// Returns false after the last machine.
    bool advance();

private:
    Transducer t_;
    std::uint64_t ordinal_;
};

/// All machines, in ordinal order. Intended for small parameters.
std::vector<Transducer> enumerate_transducers(unsigned k, unsigned outputs, unsigned inputs);

/// Calls `visit(index, machine)` for ordinals in [first, last); stops when it returns false.
void for_each_transducer(unsigned k, unsigned outputs, unsigned inputs, std::uint64_t first, std::uint64_t last,
                         const std::function<bool(TransducerIndex, const Transducer&)>& visit);

/**
 * Minimal machine with the same induced strategy: unreachable states removed,
 * equivalent states merged, states renumbered in breadth-first order from the
 * initial state (inputs in alphabet order). The result has initial state 0.
 */
Transducer canonical_form(const Transducer& t);

/// The canonical form padded back to `k` states with ordinal-0 filler states.
Transducer padded_canonical_form(const Transducer& t, unsigned k);

/// True iff `t` is the representative kept for its behavioral class.
bool is_behavioral_representative(const Transducer& t);

/// One machine per behavioral class (same induced strategy), in ordinal order.
std::vector<Transducer> dedupe_behavioral(std::span<const Transducer> machines);

/// True iff both machines produce the same outputs on every input word of length <= depth.
bool same_behavior(const Transducer& a, const Transducer& b, std::size_t depth);

struct TransducerDocument {
    Transducer machine;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

TransducerDocument parse_transducer(std::string_view text);
std::string serialize_transducer(const Transducer& t, std::span<const std::string> inputs, std::span<const std::string> outputs);
std::string serialize_transducer(const Transducer& t, const GameGraph& g);

/// Re-indexes the document's symbols onto the game's alphabets (outputs onto
/// alphabet1, inputs onto alphabet2). Throws std::invalid_argument on mismatch.
Transducer bind_to_game(const TransducerDocument& doc, const GameGraph& g);

}  // namespace ktl

#endif
