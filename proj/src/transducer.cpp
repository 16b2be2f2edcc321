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

#include "ktl/transducer.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace ktl {

Transducer::Transducer(unsigned k, unsigned outputs, unsigned inputs)
    : k_(k), outputs_(outputs), inputs_(inputs), labels_(k, 0), next_(static_cast<std::size_t>(k) * inputs, 0)
{
    if (k == 0) throw std::invalid_argument("a transducer needs at least one state");
    if (outputs == 0 || inputs == 0) throw std::invalid_argument("transducer alphabets must be nonempty");
}

void Transducer::set_initial(State m)
{
    if (m >= k_) throw std::out_of_range("initial state out of range");
    initial_ = m;
}

void Transducer::set_label(State m, Action output)
{
    if (m >= k_ || output >= outputs_) throw std::out_of_range("label out of range");
    labels_[m] = output;
}

void Transducer::set_next(State m, Action input, State target)
{
    if (m >= k_ || input >= inputs_ || target >= k_) throw std::out_of_range("transition out of range");
    next_[m * inputs_ + input] = target;
}

RunResult run(const Transducer& t, std::span<const Action> inputs)
{
    RunResult r{t.initial(), t.label(t.initial()), {}};
    r.outputs.reserve(inputs.size());
    for (Action b : inputs) {
        if (b >= t.input_size()) throw std::out_of_range("input symbol " + std::to_string(b) + " outside the transducer's input alphabet");
        r.final_state = t.next(r.final_state, b);
        r.outputs.push_back(t.label(r.final_state));
    }
    return r;
}

Action induced_strategy(const Transducer& t, std::span<const Action> history)
{
    if (history.size() % 2 != 0) throw std::invalid_argument("history must be empty or end with a Player-2 action");
    State m = t.initial();
    for (std::size_t i = 1; i < history.size(); i += 2) {
        if (history[i] >= t.input_size()) throw std::out_of_range("input symbol outside the transducer's input alphabet");
        m = t.next(m, history[i]);
    }
    return t.label(m);
}

Agreement agrees(const Word& w, const Transducer& t)
{
    if (w.cycle.size() % 2 != 0) throw std::invalid_argument("lasso cycle must have even length");
    State m = t.initial();
    std::size_t index = 0;
    auto step = [&](Action a) {
        if (index % 2 == 0) {
            if (a >= t.output_size()) throw std::out_of_range("Player-1 action outside the transducer's output alphabet");
            if (a != t.label(m)) return false;
        } else {
            if (a >= t.input_size()) throw std::out_of_range("Player-2 action outside the transducer's input alphabet");
            m = t.next(m, a);
        }
        ++index;
        return true;
    };
    for (Action a : w.prefix)
        if (!step(a)) return {false, index};
    if (w.cycle.empty()) return {true, std::nullopt};
    // The parity of the word position at the cycle head is fixed, so the state
    // at the head determines the rest.
    std::vector<char> seen(t.states(), 0);
    while (!seen[m]) {
        seen[m] = 1;
        for (Action a : w.cycle)
            if (!step(a)) return {false, index};
    }
    return {true, std::nullopt};
}

BigCount count_transducers(unsigned k, unsigned outputs, unsigned inputs)
{
    if (k == 0 || outputs == 0 || inputs == 0) throw std::invalid_argument("count needs k >= 1 and nonempty alphabets");
    BigCount labels = boost::multiprecision::pow(BigCount(outputs), k);
    BigCount tables = boost::multiprecision::pow(BigCount(k), k * inputs);
    return labels * tables;
}

namespace {

std::uint64_t checked_mul_add(std::uint64_t acc, std::uint64_t radix, std::uint64_t digit)
{
    constexpr auto max = std::numeric_limits<std::uint64_t>::max();
    if (acc > (max - digit) / radix) throw std::overflow_error("transducer ordinal exceeds 64 bits");
    return acc * radix + digit;
}

}  // namespace

TransducerIndex canonical_ordinal(const Transducer& t)
{
    if (t.initial() != 0) throw std::invalid_argument("canonical_ordinal requires initial state 0");
    std::uint64_t ord = 0;
    for (Action a : t.labels()) ord = checked_mul_add(ord, t.output_size(), a);
    for (State s : t.transitions()) ord = checked_mul_add(ord, t.states(), s);
    return {ord};
}

Transducer decode(TransducerIndex index, unsigned k, unsigned outputs, unsigned inputs)
{
    if (BigCount(index.ordinal) >= count_transducers(k, outputs, inputs)) throw std::out_of_range("ordinal exceeds the transducer count");
    Transducer t(k, outputs, inputs);
    std::uint64_t rest = index.ordinal;
    for (std::size_t i = static_cast<std::size_t>(k) * inputs; i-- > 0;) {
        t.set_next(static_cast<State>(i / inputs), static_cast<Action>(i % inputs), static_cast<State>(rest % k));
        rest /= k;
    }
    for (State m = k; m-- > 0;) {
        t.set_label(m, static_cast<Action>(rest % outputs));
        rest /= outputs;
    }
    return t;
}

TransducerOdometer::TransducerOdometer(unsigned k, unsigned outputs, unsigned inputs, std::uint64_t start)
    : t_(decode({start}, k, outputs, inputs)), ordinal_(start)
{
}

bool TransducerOdometer::advance()
{
    for (auto i = t_.next_.size(); i-- > 0;) {
        if (++t_.next_[i] < t_.k_) {
            ++ordinal_;
            return true;
        }
        t_.next_[i] = 0;
    }
    for (auto i = t_.labels_.size(); i-- > 0;) {
        if (++t_.labels_[i] < t_.outputs_) {
            ++ordinal_;
            return true;
        }
        t_.labels_[i] = 0;
    }
    return false;
}

std::vector<Transducer> enumerate_transducers(unsigned k, unsigned outputs, unsigned inputs)
{
    std::vector<Transducer> out;
    TransducerOdometer odo(k, outputs, inputs);
    do out.push_back(odo.current());
    while (odo.advance());
    return out;
}

void for_each_transducer(unsigned k, unsigned outputs, unsigned inputs, std::uint64_t first, std::uint64_t last,
                         const std::function<bool(TransducerIndex, const Transducer&)>& visit)
{
    if (first >= last || BigCount(first) >= count_transducers(k, outputs, inputs)) return;
    TransducerOdometer odo(k, outputs, inputs, first);
    do {
        if (!visit({odo.ordinal()}, odo.current())) return;
    } while (odo.ordinal() + 1 < last && odo.advance());
}

Transducer canonical_form(const Transducer& t)
{
    const unsigned k = t.states();
    const unsigned in = t.input_size();

    std::vector<State> reach{t.initial()};
    std::vector<char> seen(k, 0);
    seen[t.initial()] = 1;
    for (std::size_t i = 0; i < reach.size(); ++i)
        for (Action b = 0; b < in; ++b)
            if (State s = t.next(reach[i], b); !seen[s]) {
                seen[s] = 1;
                reach.push_back(s);
            }

    // Moore refinement: start from label classes, split by successor classes.
    std::vector<unsigned> cls(k, 0);
    for (State m : reach) cls[m] = t.label(m);
    std::size_t classes = 0;
    for (;;) {
        std::map<std::vector<unsigned>, unsigned> sig;
        std::vector<unsigned> next_cls(k, 0);
        for (State m : reach) {
            std::vector<unsigned> key{cls[m]};
            for (Action b = 0; b < in; ++b) key.push_back(cls[t.next(m, b)]);
            next_cls[m] = sig.emplace(std::move(key), static_cast<unsigned>(sig.size())).first->second;
        }
        cls = std::move(next_cls);
        if (sig.size() == classes) break;
        classes = sig.size();
    }

    // Breadth-first renaming of classes from the initial class.
    std::vector<State> rename(classes, ~State{0});
    std::vector<State> rep;
    rename[cls[t.initial()]] = 0;
    rep.push_back(t.initial());
    for (std::size_t i = 0; i < rep.size(); ++i)
        for (Action b = 0; b < in; ++b) {
            unsigned c = cls[t.next(rep[i], b)];
            if (rename[c] == ~State{0}) {
                rename[c] = static_cast<State>(rep.size());
                rep.push_back(t.next(rep[i], b));
            }
        }

    Transducer out(static_cast<unsigned>(rep.size()), t.output_size(), in);
    for (State q = 0; q < rep.size(); ++q) {
        out.set_label(q, t.label(rep[q]));
        for (Action b = 0; b < in; ++b) out.set_next(q, b, rename[cls[t.next(rep[q], b)]]);
    }
    return out;
}

Transducer padded_canonical_form(const Transducer& t, unsigned k)
{
    Transducer c = canonical_form(t);
    if (c.states() > k) throw std::invalid_argument("canonical form has more than k states");
    Transducer out(k, t.output_size(), t.input_size());
    for (State q = 0; q < c.states(); ++q) {
        out.set_label(q, c.label(q));
        for (Action b = 0; b < c.input_size(); ++b) out.set_next(q, b, c.next(q, b));
    }
    return out;
}

bool is_behavioral_representative(const Transducer& t)
{
    return t.initial() == 0 && t == padded_canonical_form(t, t.states());
}

std::vector<Transducer> dedupe_behavioral(std::span<const Transducer> machines)
{
    std::vector<Transducer> out;
    for (const auto& t : machines)
        if (is_behavioral_representative(t)) out.push_back(t);
    return out;
}

bool same_behavior(const Transducer& a, const Transducer& b, std::size_t depth)
{
    if (a.input_size() != b.input_size()) return false;
    std::set<std::pair<State, State>> frontier{{a.initial(), b.initial()}};
    for (std::size_t d = 0;; ++d) {
        for (auto [p, q] : frontier)
            if (a.label(p) != b.label(q)) return false;
        if (d == depth) return true;
        std::set<std::pair<State, State>> next;
        for (auto [p, q] : frontier)
            for (Action x = 0; x < a.input_size(); ++x) next.emplace(a.next(p, x), b.next(q, x));
        frontier = std::move(next);
    }
}

}  // namespace ktl
