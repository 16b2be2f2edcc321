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
#include <set>
#include <stdexcept>

#include "ktl/product.hpp"
#include "ktl/reductions.hpp"

namespace ktl {

namespace {

std::string superscript(bool satisfied) { return satisfied ? "top" : "bot"; }

bool contains(const std::vector<QbfLiteral>& clause, QbfLiteral lit)
{
    return std::find(clause.begin(), clause.end(), lit) != clause.end();
}

bool contains(const std::vector<int>& clause, int lit)
{
    return std::find(clause.begin(), clause.end(), lit) != clause.end();
}

}  // namespace

std::string qbf_stage_vertex(unsigned i, unsigned j, bool satisfied)
{
    return "v_" + std::to_string(i) + "_" + std::to_string(j) + "_" + superscript(satisfied);
}

std::string cnf_x_vertex(unsigned i, unsigned j, bool satisfied)
{
    return "x_" + std::to_string(i) + "_" + std::to_string(j) + "_" + superscript(satisfied);
}

std::string cnf_y_vertex(unsigned i, unsigned j, bool satisfied)
{
    return "y_" + std::to_string(i) + "_" + std::to_string(j) + "_" + superscript(satisfied);
}

GameGraph qbf_to_game(const QbfFormula& psi, QbfLayout layout)
{
    check(psi);
    const unsigned k = psi.k;
    const auto r = static_cast<unsigned>(psi.clauses.size());
    std::vector<std::string> sigma, gamma;
    for (unsigned i = 1; i <= k; ++i) {
        sigma.push_back("x" + std::to_string(i));
        sigma.push_back("~x" + std::to_string(i));
        gamma.push_back("y" + std::to_string(i));
        gamma.push_back("~y" + std::to_string(i));
    }
    sigma.push_back("e");
    const Action exit = 2 * k;
    // Literal action of step i (1..2k): x_{(i+1)/2} for odd i, y_{i/2} for even i.
    auto literal_action = [](unsigned i, bool negated) { return static_cast<Action>(2 * ((i - 1) / 2) + (negated ? 1 : 0)); };

    GameGraph g(Objective::Reachability, sigma, gamma);
    VertexId iota = g.add_vertex("iota", Player::One, 1);
    VertexId n = g.add_vertex("n", Player::Two, 1);
    std::vector<VertexId> chain;
    for (unsigned i = 1; i <= 2 * k; ++i) chain.push_back(g.add_vertex("a_" + std::to_string(i), i % 2 ? Player::One : Player::Two, 1));

    // Only superscripts that some play can produce are materialized.
    std::vector<std::vector<std::array<VertexId, 2>>> stage(r, std::vector<std::array<VertexId, 2>>(2 * k, {kNoVertex, kNoVertex}));
    for (unsigned j = 0; j < r; ++j) {
        std::set<bool> current{false};
        for (unsigned i = 1; i <= 2 * k; ++i) {
            for (bool s : current) stage[j][i - 1][s] = g.add_vertex(qbf_stage_vertex(i, j + 1, s), i % 2 ? Player::One : Player::Two, 1);
            std::set<bool> next;
            for (bool s : current)
                for (bool neg : {false, true}) next.insert(s || contains(psi.clauses[j], {i % 2 == 0, (i + 1) / 2, neg}));
            current = std::move(next);
        }
    }

    VertexId closing = kNoVertex;
    if (layout == QbfLayout::Checked) closing = g.add_vertex(qbf_stage_vertex(1, r + 1, false), Player::One, 1);

    g.set_initial(iota);
    g.set_edge(iota, exit, n);
    for (Action b = 0; b < gamma.size(); ++b) g.set_edge(n, b, chain[0]);
    for (unsigned i = 1; i <= 2 * k; ++i) {
        VertexId to = i < 2 * k ? chain[i] : stage[0][0][false];
        for (bool neg : {false, true}) g.set_edge(chain[i - 1], literal_action(i, neg), to);
    }
    for (unsigned j = 0; j < r; ++j) {
        for (unsigned i = 1; i <= 2 * k; ++i) {
            for (bool s : {false, true}) {
                VertexId v = stage[j][i - 1][s];
                if (v == kNoVertex) continue;
                for (bool neg : {false, true}) {
                    bool sat = s || contains(psi.clauses[j], {i % 2 == 0, (i + 1) / 2, neg});
                    VertexId to;
                    if (i < 2 * k)
                        to = stage[j][i][sat];
                    else if (!sat)
                        continue;  // unsatisfied clause: opponent-paradise rule
                    else if (j + 1 < r)
                        to = stage[j + 1][0][false];
                    else if (closing != kNoVertex)
                        to = closing;
                    else
                        to = ensure_paradise(g, Player::Two, Player::Two);
                    g.set_edge(v, literal_action(i, neg), to);
                }
                if (i % 2 == 1 && !(i == 1 && j == 0)) g.set_edge(v, exit, ensure_paradise(g, Player::One, Player::One));
            }
        }
    }
    if (closing != kNoVertex) {
        for (Action a = 0; a < exit; ++a) g.set_edge(closing, a, ensure_paradise(g, Player::Two, Player::One));
        g.set_edge(closing, exit, ensure_paradise(g, Player::One, Player::One));
    }
    return complete(g);
}

GameGraph cnf_to_game(const CnfFormula& phi)
{
    check(phi);
    const unsigned k = phi.k;
    const auto r = static_cast<unsigned>(phi.clauses.size());
    std::vector<std::string> sigma;
    for (unsigned i = 1; i <= k; ++i) {
        sigma.push_back("T" + std::to_string(i));
        sigma.push_back("F" + std::to_string(i));
    }
    GameGraph g(Objective::Reachability, sigma, {"eps"});
    auto action = [](unsigned i, bool value) { return static_cast<Action>(2 * (i - 1) + (value ? 0 : 1)); };

    VertexId iota = g.add_vertex("iota", Player::One, 1);
    // x[j][i-1][s], y[j][i-1][s]
    using Row = std::vector<std::array<VertexId, 2>>;
    std::vector<Row> x(r, Row(k, {kNoVertex, kNoVertex})), y(r, Row(k, {kNoVertex, kNoVertex}));
    for (unsigned j = 0; j < r; ++j) {
        std::set<bool> current{false};
        for (unsigned i = 1; i <= k; ++i) {
            std::set<bool> next;
            for (bool s : current)
                for (bool value : {true, false}) next.insert(s || contains(phi.clauses[j], value ? int(i) : -int(i)));
            current = std::move(next);
            for (bool s : current) {
                x[j][i - 1][s] = g.add_vertex(cnf_x_vertex(i, j + 1, s), Player::Two, 1);
                y[j][i - 1][s] = g.add_vertex(cnf_y_vertex(i, j + 1, s), Player::One, 1);
            }
        }
    }

    g.set_initial(iota);
    for (unsigned j = 0; j < r; ++j) {
        // Stage j starts where stage j-1 ended satisfied.
        VertexId start = j == 0 ? iota : y[j - 1][k - 1][true];
        for (unsigned i = 1; i <= k; ++i) {
            for (bool s : {false, true}) {
                VertexId from = i == 1 ? (s ? kNoVertex : start) : y[j][i - 2][s];
                if (from == kNoVertex) continue;
                for (bool value : {true, false}) {
                    bool sat = s || contains(phi.clauses[j], value ? int(i) : -int(i));
                    g.set_edge(from, action(i, value), x[j][i - 1][sat]);
                }
            }
            for (bool s : {false, true})
                if (x[j][i - 1][s] != kNoVertex) g.set_edge(x[j][i - 1][s], 0, y[j][i - 1][s]);
        }
        if (VertexId fail = y[j][k - 1][false]; fail != kNoVertex) {
            VertexId green = ensure_paradise(g, Player::Two, Player::One);
            for (Action a = 0; a < sigma.size(); ++a) g.set_edge(fail, a, green);
        }
    }
    // Satisfying every clause ends in Player 1's paradise, entered through its
    // owner-2 vertex so the arena stays alternating.
    if (VertexId done = y[r - 1][k - 1][true]; done != kNoVertex) {
        VertexId orange = ensure_paradise(g, Player::One, Player::One);
        for (Action a = 0; a < sigma.size(); ++a) g.set_edge(done, a, orange);
    }
    return complete(g);
}

Transducer assignment_transducer(const GameGraph& cnf_game, const std::vector<bool>& assignment)
{
    const auto k = static_cast<unsigned>(assignment.size());
    if (k == 0 || cnf_game.alphabet(Player::One).size() != 2 * k) throw std::invalid_argument("assignment does not match the game");
    Transducer t(k, 2 * k, static_cast<unsigned>(cnf_game.alphabet(Player::Two).size()));
    for (unsigned i = 0; i < k; ++i) {
        auto a = cnf_game.find_action(Player::One, (assignment[i] ? "T" : "F") + std::to_string(i + 1));
        if (!a) throw std::invalid_argument("game is not a CNF game");
        t.set_label(i, *a);
        for (Action b = 0; b < t.input_size(); ++b) t.set_next(i, b, (i + 1) % k);
    }
    return t;
}

CnfReductionCheck check_cnf_reduction(const CnfFormula& phi, const LivenessOptions& options)
{
    CnfReductionCheck out;
    GameGraph game = cnf_to_game(phi);
    out.satisfying = sat_brute_force(phi);
    out.verdict = check_k_live(game, phi.k, options);
    if (out.verdict.outcome != LiveOutcome::UndecidedAtCap) out.agrees = out.verdict.live() == !out.satisfying.has_value();
    if (out.verdict.witness) out.witness_verified = verify_witness(game, phi.k, *out.verdict.witness);
    if (out.satisfying) {
        auto w = check_transducer(game, assignment_transducer(game, *out.satisfying));
        out.assignment_verified = w && verify_witness(game, phi.k, *w);
    }
    return out;
}

namespace {

// Whether Player 1 (choosing x) can falsify the matrix from `level` on.
bool falsifier_wins(const QbfFormula& psi, unsigned level, std::vector<bool>& x, std::vector<bool>& y)
{
    if (level == 2 * psi.k) return !evaluate(psi, x, y);
    unsigned i = level / 2;
    bool falsifier_moves = level % 2 == 0;
    auto& slot = falsifier_moves ? x : y;
    for (bool value : {false, true}) {
        slot[i] = value;
        bool w = falsifier_wins(psi, level + 1, x, y);
        if (falsifier_moves && w) return true;
        if (!falsifier_moves && !w) return false;
    }
    return !falsifier_moves;
}

}  // namespace

std::optional<std::vector<bool>> falsifying_choice(const QbfFormula& psi, const std::vector<bool>& y_answers)
{
    check(psi);
    if (y_answers.size() != psi.k) throw std::invalid_argument("answer vector has the wrong length");
    std::vector<bool> x(psi.k), y(psi.k);
    for (unsigned i = 0; i < psi.k; ++i) {
        bool found = false;
        for (bool value : {false, true}) {
            x[i] = value;
            std::vector<bool> xs = x, ys = y;
            if (falsifier_wins(psi, 2 * i + 1, xs, ys)) {
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
        y[i] = y_answers[i];
    }
    return x;
}

Transducer counter_transducer(const GameGraph& qbf_game, const QbfFormula& psi, const std::vector<bool>& y)
{
    auto x = falsifying_choice(psi, y);
    if (!x) throw std::invalid_argument("formula is valid; no counter machine exists");
    const unsigned k = psi.k;
    auto p1 = [&](const std::string& s) {
        auto a = qbf_game.find_action(Player::One, s);
        if (!a) throw std::invalid_argument("game is not a QBF game");
        return *a;
    };
    auto p2 = [&](const std::string& s) {
        auto b = qbf_game.find_action(Player::Two, s);
        if (!b) throw std::invalid_argument("game is not a QBF game");
        return *b;
    };
    Transducer t(k + 1, static_cast<unsigned>(qbf_game.alphabet(Player::One).size()),
                 static_cast<unsigned>(qbf_game.alphabet(Player::Two).size()));
    t.set_label(0, p1("e"));
    for (Action b = 0; b < t.input_size(); ++b) t.set_next(0, b, 1);
    for (unsigned i = 1; i <= k; ++i) {
        t.set_label(i, p1(((*x)[i - 1] ? "x" : "~x") + std::to_string(i)));
        Action expected = p2((y[i - 1] ? "y" : "~y") + std::to_string(i));
        for (Action b = 0; b < t.input_size(); ++b) t.set_next(i, b, b == expected ? i % k + 1 : 0);
    }
    return t;
}

CounterStrategyResult check_counter_strategy(const QbfFormula& psi, QbfLayout layout)
{
    check(psi);
    if (qbf_brute_force(psi)) throw std::invalid_argument("formula is valid; no counter strategy exists");
    GameGraph game = qbf_to_game(psi, layout);
    const unsigned k = psi.k;
    CounterStrategyResult out;
    out.beats_every_answer = true;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
        std::vector<bool> y(k);
        for (unsigned i = 0; i < k; ++i) y[i] = (bits >> i) & 1;
        Transducer t = counter_transducer(game, psi, y);
        ProductGame p = build_product(game, t);
        Arena full = forced_arena(p);
        if (!one_player_region(full, game.objective())[p.initial()]) out.single_machine_wins = true;

        // Pin Player 2's phase-2 answers to y.
        Arena pinned;
        pinned.owner = full.owner;
        pinned.color = full.color;
        pinned.first.push_back(0);
        for (VertexId x = 0; x < full.size(); ++x) {
            std::optional<Action> only;
            const auto& pos = p.positions[x];
            if (!pos.is_top()) {
                const auto& name = game.vertex(pos.vertex).name;
                for (unsigned i = 1; i <= k; ++i)
                    if (name == "a_" + std::to_string(2 * i)) only = *game.find_action(Player::Two, (y[i - 1] ? "y" : "~y") + std::to_string(i));
            }
            for (auto e = full.begin(x); e < full.end(x); ++e) {
                if (only && full.label[e] != *only) continue;
                pinned.label.push_back(full.label[e]);
                pinned.target.push_back(full.target[e]);
            }
            pinned.first.push_back(static_cast<std::uint32_t>(pinned.target.size()));
        }
        if (one_player_region(pinned, game.objective())[p.initial()] && out.beats_every_answer) {
            out.beats_every_answer = false;
            out.failing_answer = y;
        }
    }
    return out;
}

QbfReductionCheck check_qbf_reduction(const QbfFormula& psi, const BoundedOptions& options, QbfLayout layout)
{
    QbfReductionCheck out;
    out.valid = qbf_brute_force(psi);
    GameGraph game = qbf_to_game(psi, layout);
    out.bounded = solve_bounded(game, psi.k + 1, options);
    if (out.bounded.outcome != BoundedOutcome::UndecidedAtCap) out.game_agrees = out.bounded.p2_wins() == out.valid;
    if (!out.valid) out.counter = check_counter_strategy(psi, layout);
    return out;
}

}  // namespace ktl
