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

#include <fstream>
#include <sstream>

#include "ktl/game.hpp"
#include "ktl/random.hpp"
#include "oracles.hpp"

using namespace ktl;

namespace {

const char* kToggle = R"(game buchi
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
)";

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("game documents round-trip through the text format")
{
    GameGraph g = parse_game(kToggle);
    CHECK(g.objective() == Objective::Buchi);
    CHECK(g.size() == 4);
    CHECK(g.vertex(*g.initial()).name == "s");
    CHECK(g.successor(*g.find("u"), *g.find_action(Player::Two, "c")) == *g.find("good"));
    CHECK(validate(g).empty());
    CHECK(parse_game(serialize_game(g)) == g);
    CHECK(parse_game(slurp(KTL_TEST_DATA "/toggle.bg")) == g);
}

TEST_CASE("comments and blank lines are ignored")
{
    std::string text = "# header\n\n" + std::string(kToggle) + "  # trailing\n";
    CHECK(parse_game(text) == parse_game(kToggle));
}

TEST_CASE("parse errors carry line and column")
{
    auto error_at = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
        try {
            parse_game(text);
        } catch (const ParseError& e) {
            return {e.line(), e.column()};
        }
        return {0, 0};
    };
    CHECK(error_at("game chess\n") == std::pair<std::size_t, std::size_t>{1, 6});
    CHECK(error_at("game buchi\nalphabet1 a\nalphabet2 b\nvertex s owner=3 color=1\n").first == 4);
    CHECK(error_at("game buchi\nalphabet1 a\nalphabet2 b\nvertex s owner=1 color=1\ninit s\nedge s a nowhere\n") ==
          std::pair<std::size_t, std::size_t>{6, 10});
    CHECK(error_at("game buchi\nalphabet1 a a\n").first == 2);
    CHECK(error_at("game buchi\nalphabet1 a?\n").first == 2);
    CHECK(error_at("game buchi\nalphabet1 a\nalphabet2 b\nvertex s owner=1 color=1\n").first == 1);  // no init
    CHECK(error_at("game buchi\nalphabet1 a\nalphabet2 b\nvertex s owner=1 color=1\ninit s\nfrobnicate\n").first == 6);
}

TEST_CASE("validate reports each kind of violation")
{
    SUBCASE("partial games are accepted by the parser and rejected by validate")
    {
        GameGraph g = parse_game(slurp(KTL_TEST_DATA "/partial.bg"));
        auto v = validate(g);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == Violation::Kind::Totality);
        CHECK(describe(g, v[0]) == "VIOLATION totality s b");
    }
    SUBCASE("alternation")
    {
        GameGraph g(Objective::Reachability, {"a"}, {"b"});
        VertexId s = g.add_vertex("s", Player::One, 1);
        VertexId t = g.add_vertex("t", Player::One, 1);
        g.set_initial(s);
        g.set_edge(s, 0, t);
        g.set_edge(t, 0, s);
        auto v = validate(g);
        REQUIRE(v.size() == 2);
        CHECK(v[0].kind == Violation::Kind::Alternation);
    }
    SUBCASE("initial owner and colors")
    {
        GameGraph g(Objective::Buchi, {"a"}, {"b"});
        VertexId s = g.add_vertex("s", Player::Two, 3);
        VertexId t = g.add_vertex("t", Player::One, 1);
        g.set_initial(s);
        g.set_edge(s, 0, t);
        g.set_edge(t, 0, s);
        auto v = validate(g);
        REQUIRE(v.size() == 2);
        CHECK(v[0].kind == Violation::Kind::InitialOwner);
        CHECK(v[1].kind == Violation::Kind::Color);
    }
    SUBCASE("an action from the wrong alphabet is a typing violation")
    {
        CHECK_THROWS_AS(parse_game(std::string(kToggle) + "edge s c good\n"), ParseError);
        GameGraph g = parse_game(kToggle);
        g.add_foreign_edge(*g.find("s"), *g.find_action(Player::Two, "c"), *g.find("good"));
        auto v = validate(g);
        REQUIRE(v.size() == 1);
        CHECK(v[0].kind == Violation::Kind::Typing);
        CHECK(describe(g, v[0]) == "VIOLATION typing s c");
    }
}

TEST_CASE("complete routes missing moves to the opponent's paradise")
{
    GameGraph g = complete(parse_game(slurp(KTL_TEST_DATA "/partial.bg")));
    CHECK(validate(g).empty());
    VertexId s = *g.find("s");
    VertexId target = g.successor(s, *g.find_action(Player::One, "b"));
    // Player 1 moved illegally, so Player 2's paradise is entered at its owner-2 vertex.
    CHECK(g.vertex(target).name == kP2ParadiseEntry);
    CHECK(g.owner(target) == Player::Two);
    CHECK(g.color(target) == 2);
    CHECK(g.color(*g.find(kP2ParadiseExit)) == 2);
    CHECK(g.size() == 4);
    CHECK(solve_parity(g).winner[s] == Player::Two);
}

TEST_CASE("paradises are shared and alternate owners")
{
    GameGraph g(Objective::Buchi, {"a", "b"}, {"c"});
    VertexId v1 = ensure_paradise(g, Player::One, Player::One);
    VertexId v2 = ensure_paradise(g, Player::One, Player::Two);
    CHECK(g.size() == 2);
    CHECK(g.owner(v1) == Player::Two);
    CHECK(g.owner(v2) == Player::One);
    CHECK(g.successor(v1, 0) == v2);
    CHECK(g.successor(v2, 1) == v1);
    CHECK(g.color(v1) == 1);
}

TEST_CASE("property: complete is the identity on total games")
{
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        GameGraph g = random_game({6, 2, 3, Objective::Parity, 4, 0.2}, rng);
        CHECK(complete(g) == g);
    }
}

TEST_CASE("property: dropping a Player-1 move and completing only helps Player 2")
{
    Rng rng(12);
    for (int i = 0; i < 30; ++i) {
        GameGraph g = random_game({8, 2, 2, Objective::Reachability, 4, 0.2}, rng);
        GameGraph partial = g;
        partial.remove_edge(0, 1);
        GameGraph c = complete(partial);
        // Player 1 dropping a move can only help Player 2.
        auto before = solve_parity(g).winner;
        auto after = solve_parity(c).winner;
        for (VertexId v = 0; v < g.size(); ++v)
            if (before[v] == Player::Two) CHECK(after[v] == Player::Two);
        CHECK(c.is_total());
    }
}

TEST_CASE("lasso winners follow the objective")
{
    GameGraph g = parse_game(kToggle);
    Action a = 0, b = 1, c = 0, d = 1;
    CHECK(winner_of_lasso(g, Word{{}, {a, c}}) == Player::Two);       // s u good u good ...
    CHECK(winner_of_lasso(g, Word{{}, {a, d}}) == Player::One);       // s u s u ...
    CHECK(winner_of_lasso(g, Word{{a, c}, {b, c}}) == Player::One);   // good w s w s ...
    CHECK(winner_of_lasso(g, Word{{a, d, b}, {d, a, c, a}}) == Player::Two);
    CHECK_THROWS_AS(winner_of_lasso(g, Word{{a}, {}}), std::invalid_argument);

    GameGraph r(Objective::Reachability, {"a"}, {"b"});
    VertexId s = r.add_vertex("s", Player::One, 1);
    VertexId t = r.add_vertex("t", Player::Two, 2);
    VertexId z = r.add_vertex("z", Player::One, 1);
    VertexId y = r.add_vertex("y", Player::Two, 1);
    r.set_initial(s);
    r.set_edge(s, 0, t);
    r.set_edge(t, 0, z);
    r.set_edge(z, 0, y);
    r.set_edge(y, 0, z);
    // A target visited once in the prefix suffices.
    CHECK(winner_of_lasso(r, Word{{0, 0}, {0, 0}}) == Player::Two);
    CHECK(winner_of_lasso(r, z, Word{{}, {0, 0}}) == Player::One);
}

TEST_CASE("play_from reports the index of an illegal move")
{
    GameGraph g = parse_game(slurp(KTL_TEST_DATA "/partial.bg"));
    std::vector<Action> word{0, 0, 1};
    try {
        play_from(g, *g.initial(), word);
        FAIL("expected IllegalMove");
    } catch (const IllegalMove& e) {
        CHECK(e.index() == 2);
    }
    CHECK(play_from(g, 0, std::vector<Action>{0, 0}) == std::vector<VertexId>{0, 1, 0});
}

TEST_CASE("property: the oracle's reachable set equals the closure of play_from over all words")
{
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        GameGraph g = random_game({10, 2, 2, Objective::Buchi, 4, 0.3}, rng);
        auto reach = oracle::reachable(g, 0);
        // Every vertex hit by a random walk is in the closure.
        for (int walk = 0; walk < 20; ++walk) {
            std::vector<Action> word;
            for (int s = 0; s < 12; ++s) word.push_back(std::uniform_int_distribution<Action>(0, 1)(rng));
            for (VertexId v : play_from(g, 0, word)) CHECK(reach.count(v) == 1);
        }
    }
}
