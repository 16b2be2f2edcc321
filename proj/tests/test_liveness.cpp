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

#include <doctest.h>

#include "ktl/liveness.hpp"
#include "ktl/random.hpp"
#include "oracles.hpp"

using namespace ktl;

namespace {

// Player 1 can always dodge the color-2 vertex.
GameGraph dodge()
{
    return parse_game(R"(game buchi
alphabet1 a b
alphabet2 c
vertex s owner=1 color=1
vertex x owner=2 color=1
vertex y owner=2 color=2
init s
edge s a x
edge s b y
edge x c s
edge y c s
)");
}

// Player 2 reaches good whatever Player 1 does.
GameGraph toggle()
{
    return parse_game(R"(game buchi
alphabet1 a b
alphabet2 c d
vertex s owner=1 color=1
vertex u owner=2 color=1
vertex w owner=2 color=1
vertex good owner=1 color=2
init s
edge s a u
edge s b w
edge u c good
edge u d s
edge w c s
edge w d good
edge good a u
edge good b w
)");
}

// Player 1 escapes only by switching letters after its first move, which a
// one-state machine cannot do. Live for k = 1, not live for k = 2.
GameGraph memory_game()
{
    return parse_game(R"(game reachability
alphabet1 a b
alphabet2 c
vertex s owner=1 color=1
vertex p owner=2 color=1
vertex q owner=2 color=1
vertex t owner=1 color=1
vertex t2 owner=1 color=1
vertex hit owner=2 color=2
vertex r owner=2 color=1
vertex r2 owner=2 color=1
init s
edge s a p
edge s b q
edge p c t
edge q c t2
edge t a hit
edge t b r
edge t2 b hit
edge t2 a r2
edge r c t
edge r2 c t2
edge hit c s
)");
}

}  // namespace

TEST_CASE("a game Player 2 always wins is live")
{
    for (unsigned k = 1; k <= 3; ++k) {
        auto v = check_k_live(toggle(), k);
        CHECK(v.live());
        CHECK_FALSE(v.witness.has_value());
        CHECK(v.stats.examined == oracle::transducer_count(k, 2, 2));
        CHECK(v.total == count_transducers(k, 2, 2));
    }
}

TEST_CASE("a dodging machine refutes liveness")
{
    GameGraph g = dodge();
    auto v = check_k_live(g, 1);
    CHECK(v.outcome == LiveOutcome::NotLive);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->index.ordinal == 0);  // the constant-a machine
    CHECK(v.witness->alpha.empty());
    CHECK(v.witness->position.vertex == *g.initial());
    CHECK(verify_witness(g, 1, *v.witness));

    // A forged witness fails the independent re-check.
    LivenessWitness forged = *v.witness;
    forged.machine.set_label(0, 1);
    forged.index = canonical_ordinal(forged.machine);
    CHECK_FALSE(verify_witness(g, 1, forged));
    CHECK(to_string(v.outcome) == "not-live");
}

TEST_CASE("memory separates k = 1 from k = 2")
{
    GameGraph g = memory_game();
    CHECK(validate(g).empty());
    CHECK(check_k_live(g, 1).live() == oracle::k_live_naive(g, 1));
    CHECK(check_k_live(g, 2).live() == oracle::k_live_naive(g, 2));
    CHECK(check_k_live(g, 1).live());
    auto two = check_k_live(g, 2);
    REQUIRE(two.outcome == LiveOutcome::NotLive);
    CHECK(two.witness->index.ordinal == 7);  // a, then b forever
    CHECK(verify_witness(g, 2, *two.witness));
    CHECK(oracle::agrees_naive(two.witness->alpha, two.witness->machine));
}

TEST_CASE("property: liveness matches the naive check")
{
    Rng rng(77);
    const Objective objectives[] = {Objective::Parity, Objective::Buchi, Objective::Reachability};
    int live = 0;
    for (int i = 0; i < 60; ++i) {
        RandomGameOptions o;
        o.vertices = 2 + i % 7;
        o.sigma = 1 + i % 2;
        o.gamma = 1 + (i / 2) % 2;
        o.objective = objectives[i % 3];
        o.max_color = 3;
        o.target_density = 0.4;
        GameGraph g = random_game(o, rng);
        for (unsigned k = 1; k <= 2; ++k) {
            auto v = check_k_live(g, k);
            bool expect = oracle::k_live_naive(g, k);
            CHECK(v.live() == expect);
            CHECK(check_k_live(g, k, {.dedupe = true}).live() == expect);
            if (!v.live()) {
                REQUIRE(v.witness.has_value());
                CHECK(verify_witness(g, k, *v.witness));
            }
            live += v.live();
        }
    }
    CHECK(live > 0);
    CHECK(live < 120);
}

TEST_CASE("property: the witness does not depend on the number of jobs")
{
    Rng rng(31);
    for (int i = 0; i < 25; ++i) {
        GameGraph g = random_game({7, 2, 2, Objective::Buchi, 2, 0.3}, rng);
        auto one = check_k_live(g, 2, {.jobs = 1});
        auto many = check_k_live(g, 2, {.jobs = 4});
        CHECK(one.outcome == many.outcome);
        if (one.witness && many.witness) {
            CHECK(one.witness->index.ordinal == many.witness->index.ordinal);
            CHECK(one.witness->alpha == many.witness->alpha);
        }
    }
}

TEST_CASE("the cap bounds the scan")
{
    auto live = check_k_live(toggle(), 2, {.cap = 10});
    CHECK(live.outcome == LiveOutcome::UndecidedAtCap);
    CHECK(live.stats.examined == 10);
    auto dead = check_k_live(dodge(), 2, {.cap = 10});
    CHECK(dead.outcome == LiveOutcome::NotLive);
    GameGraph partial = toggle();
    partial.remove_edge(0, 0);
    CHECK_THROWS_AS(check_k_live(partial, 1), std::invalid_argument);
}

TEST_CASE("word membership in the k-transducer language")
{
    Word flip{{0, 0, 1, 0}, {}};  // a c b c
    CHECK_FALSE(word_in_Ak(flip, 1, 2, 2).has_value());
    auto t = word_in_Ak(flip, 2, 2, 2);
    REQUIRE(t.has_value());
    CHECK(oracle::agrees_naive(flip.prefix, *t));
    CHECK(canonical_ordinal(*t).ordinal == 16 + 8);  // labels a b, state 0 moves to 1 on c

    // Two words that force contradictory labels on a shared prefix.
    std::vector<Word> both{{{0, 0, 1}, {}}, {{0, 0, 0}, {}}};
    CHECK_FALSE(word_in_Ak(both, 3, 2, 2).has_value());
}

TEST_CASE("a word with three residual behaviors needs three states")
{
    // Counter mod 3 on input c, labels a a b: states are pairwise distinguishable.
    Transducer three(3, 2, 1);
    three.set_label(2, 1);
    for (State m = 0; m < 3; ++m) three.set_next(m, 0, (m + 1) % 3);
    std::vector<Action> w;
    State m = 0;
    for (int i = 0; i < 7; ++i) {
        w.push_back(three.label(m));
        w.push_back(0);
        m = three.next(m, 0);
    }
    std::size_t agreeing = 0;
    for (std::uint64_t n = 0; n < oracle::transducer_count(2, 2, 1); ++n) agreeing += oracle::agrees_naive(w, decode({n}, 2, 2, 1));
    CHECK(agreeing == 0);
    CHECK_FALSE(word_in_Ak(Word{w, {}}, 2, 2, 1).has_value());
    auto found = word_in_Ak(Word{w, {}}, 3, 2, 1);
    REQUIRE(found.has_value());
    CHECK(oracle::agrees_naive(w, *found));
}

TEST_CASE("property: word membership agrees with brute force and picks the least ordinal")
{
    Rng rng(64);
    for (int i = 0; i < 200; ++i) {
        unsigned k = 1 + i % 3;
        std::vector<Action> w;
        for (int j = 0; j < 2 + i % 7; ++j) w.push_back(std::uniform_int_distribution<Action>(0, 1)(rng));
        std::optional<std::uint64_t> least;
        for (std::uint64_t n = 0; n < oracle::transducer_count(k, 2, 2) && !least; ++n)
            if (oracle::agrees_naive(w, decode({n}, k, 2, 2))) least = n;
        auto got = word_in_Ak(Word{w, {}}, k, 2, 2);
        REQUIRE(got.has_value() == least.has_value());
        if (got) CHECK(canonical_ordinal(*got).ordinal == *least);
    }
}
