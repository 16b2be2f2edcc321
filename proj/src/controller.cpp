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
#include <limits>
#include <map>
#include <sstream>

#include "ktl/synthesis.hpp"

namespace ktl {

ScriptController::ScriptController(std::vector<Action> script) : script_(std::move(script))
{
    if (script_.empty()) throw std::invalid_argument("script must be nonempty");
}

Action ScriptController::respond(Action)
{
    Action b = script_[cursor_];
    cursor_ = (cursor_ + 1) % script_.size();
    return b;
}

AdaptiveController::AdaptiveController(const GameGraph& g, unsigned k, ControllerMode mode) : g_(&g), k_(k), mode_(mode)
{
    if (!g.is_total()) throw std::invalid_argument("controller needs a total game (run complete first)");
    if (!g.initial()) throw std::invalid_argument("game has no initial vertex");
    BigCount count = count_transducers(k, static_cast<unsigned>(g.alphabet(Player::One).size()),
                                       static_cast<unsigned>(g.alphabet(Player::Two).size()));
    if (count > BigCount(std::numeric_limits<std::uint64_t>::max())) throw std::overflow_error("too many transducers to enumerate");
    count_ = count.convert_to<std::uint64_t>();
    reset();
}

void AdaptiveController::reset()
{
    ordinal_ = 0;
    switches_ = 0;
    vertex_ = *g_->initial();
    log_.clear();
    product_.reset();
    lasso_.reset();
    lasso_start_ = kNoVertex;
    cursor_ = 0;
    conjecture_.reset();
    candidates_.clear();
    phase_ = ControllerPhase::Scanning;
}

// Builds the product for the current ordinal and the candidate set for the
// current vertex. Called at a Player-2 vertex, after Player 1's action.
void AdaptiveController::load_hypothesis()
{
    const auto sigma = static_cast<unsigned>(g_->alphabet(Player::One).size());
    const auto gamma = static_cast<unsigned>(g_->alphabet(Player::Two).size());
    machine_ = decode({ordinal_}, k_, sigma, gamma);
    product_ = build_product(*g_, machine_);
    winning_ = p2_winning_positions(*product_).p2_wins;
    lasso_.reset();
    conjecture_.reset();
    candidates_.clear();
    if (mode_ == ControllerMode::LogReplay) {
        if (agrees(Word{log_, {}}, machine_)) {
            State m = machine_.initial();
            for (std::size_t i = 1; i < log_.size(); i += 2) m = machine_.next(m, log_[i]);
            candidates_.push_back(m);
        }
    } else {
        auto reach = reachable_positions(*product_);
        for (VertexId x : reach) {
            const auto& pos = product_->positions[x];
            if (!pos.is_top() && pos.vertex == vertex_) candidates_.push_back(pos.state);
        }
        std::sort(candidates_.begin(), candidates_.end());
    }
}

void AdaptiveController::next_hypothesis()
{
    ordinal_ = (ordinal_ + 1) % count_;
    ++switches_;
    load_hypothesis();
}

// Conjectures the least candidate with a winning position and starts its lasso.
bool AdaptiveController::start_lasso()
{
    while (!candidates_.empty()) {
        State m = candidates_.front();
        auto pos = product_->find(vertex_, m);
        if (pos && winning_[*pos]) {
            conjecture_ = m;
            lasso_ = winning_lasso(*product_, *pos);
            lasso_start_ = *pos;
            cursor_ = 0;
            return true;
        }
        candidates_.erase(candidates_.begin());
    }
    return false;
}

bool AdaptiveController::follows_lasso(Action observed) const
{
    if (!lasso_ || !conjecture_) return false;
    return machine_.label(*conjecture_) == observed;
}

Action AdaptiveController::respond(Action observed)
{
    const GameGraph& g = *g_;
    if (g.owner(vertex_) != Player::One) throw std::logic_error("controller is out of sync with the play");
    if (observed >= g.alphabet(Player::One).size()) throw std::out_of_range("observed action outside alphabet1");
    bool on_lasso = follows_lasso(observed);
    log_.push_back(observed);
    vertex_ = g.successor(vertex_, observed);

    if (!product_) {
        load_hypothesis();
    } else {
        // Keep the candidates whose output matches; their states do not move on Player-1 actions.
        std::erase_if(candidates_, [&](State m) { return machine_.label(m) != observed; });
        if (!on_lasso) {
            lasso_.reset();
            conjecture_.reset();
        }
    }

    std::uint64_t tried = 0;
    while (!lasso_) {
        if (candidates_.empty() || !start_lasso()) {
            if (++tried > count_) break;  // no machine fits the history
            next_hypothesis();
            continue;
        }
    }

    Action answer = 0;
    if (lasso_) {
        phase_ = ControllerPhase::Tracking;
        const auto& l = *lasso_;
        auto at = [&](std::size_t i) -> const Step& { return i < l.prefix.size() ? l.prefix[i] : l.cycle[i - l.prefix.size()]; };
        answer = at(cursor_).action;
        // Skip past the Player-2 step and the Player-1 step that follows it.
        for (int s = 0; s < 2; ++s) {
            ++cursor_;
            if (cursor_ == l.length()) cursor_ = l.prefix.size();
        }
    } else {
        phase_ = ControllerPhase::Scanning;
    }

    for (auto& m : candidates_) m = machine_.next(m, answer);
    std::sort(candidates_.begin(), candidates_.end());
    candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
    if (conjecture_) conjecture_ = machine_.next(*conjecture_, answer);
    log_.push_back(answer);
    vertex_ = g.successor(vertex_, answer);
    return answer;
}

std::string AdaptiveController::configuration() const
{
    std::ostringstream out;
    out << ordinal_ << '|' << vertex_ << '|';
    for (State m : candidates_) out << m << ',';
    out << '|' << (conjecture_ ? static_cast<long long>(*conjecture_) : -1);
    out << '|' << (lasso_ ? static_cast<long long>(lasso_start_) : -1) << '|' << cursor_;
    return out.str();
}

Trace simulate(const GameGraph& g, Controller& controller, const Transducer& hidden, std::uint64_t max_steps)
{
    if (!g.initial()) throw std::invalid_argument("game has no initial vertex");
    if (hidden.output_size() != g.alphabet(Player::One).size() || hidden.input_size() != g.alphabet(Player::Two).size())
        throw std::invalid_argument("hidden transducer alphabets do not match the game");
    controller.reset();
    Trace trace;
    VertexId v = *g.initial();
    State m = hidden.initial();
    const bool reach = g.objective() == Objective::Reachability;
    std::map<std::tuple<VertexId, State, std::string>, std::size_t> seen;  // -> index into actions

    auto hit = [&](VertexId u) { return reach && g.color(u) == 2; };
    if (hit(v)) {
        trace.winner = Player::Two;
        return trace;
    }
    while (trace.steps < max_steps) {
        auto key = std::make_tuple(v, m, controller.configuration());
        if (auto it = seen.find(key); it != seen.end()) {
            Word w;
            w.prefix.assign(trace.actions.begin(), trace.actions.begin() + static_cast<std::ptrdiff_t>(it->second));
            w.cycle.assign(trace.actions.begin() + static_cast<std::ptrdiff_t>(it->second), trace.actions.end());
            trace.winner = winner_of_lasso(g, w);
            trace.lasso = std::move(w);
            return trace;
        }
        seen.emplace(std::move(key), trace.actions.size());

        Action a = hidden.label(m);
        trace.vertices.push_back(v);
        trace.actions.push_back(a);
        v = g.successor(v, a);
        if (v == kNoVertex) throw IllegalMove(trace.actions.size() - 1, "no edge for Player 1's action");
        if (hit(v)) {
            trace.winner = Player::Two;
            return trace;
        }

        Action b = controller.respond(a);
        ++trace.steps;
        if (auto h = controller.hypothesis()) trace.hypothesis_log.push_back({trace.steps, h->first, h->second});
        trace.vertices.push_back(v);
        trace.actions.push_back(b);
        v = g.successor(v, b);
        if (v == kNoVertex) throw IllegalMove(trace.actions.size() - 1, "no edge for Player 2's action");
        m = hidden.next(m, b);
        if (hit(v)) {
            trace.winner = Player::Two;
            return trace;
        }
    }
    return trace;
}

BigCount steps_bound(std::size_t n, unsigned k, unsigned sigma, unsigned gamma)
{
    return count_transducers(k, sigma, gamma) * k * 4 * BigCount(n) * k;
}

std::string format_trace(const GameGraph& g, const Trace& trace)
{
    std::ostringstream out;
    std::size_t record = 0;
    for (std::size_t i = 0; i < trace.actions.size(); ++i) {
        Player p = i % 2 == 0 ? Player::One : Player::Two;
        out << "STEP " << i << " P" << static_cast<int>(p) << ' ' << g.alphabet(p)[trace.actions[i]] << ' '
            << g.vertex(trace.vertices[i]).name;
        if (p == Player::Two && record < trace.hypothesis_log.size()) {
            const auto& h = trace.hypothesis_log[record++];
            out << " ordinal=" << h.ordinal << " |M'|=" << h.candidates;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace ktl
