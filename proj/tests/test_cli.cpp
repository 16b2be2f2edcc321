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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "ktl/game.hpp"
#include "ktl/transducer.hpp"

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome ktlive(std::vector<std::string> args, const std::string& stdin_text = "")
{
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = ktl::cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name)
{
    return std::string(KTL_TEST_DATA) + "/" + name;
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Scratch directory removed when the test ends.
struct TempDir {
    std::filesystem::path path;
    TempDir()
    {
        path = std::filesystem::temp_directory_path() / ("ktlive_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("exit codes")
{
    CHECK(ktlive({"validate", data("toggle.bg")}).code == ktl::cli::kOk);
    CHECK(ktlive({"validate", data("partial.bg")}).code == ktl::cli::kNegative);
    CHECK(ktlive({"validate", data("missing.bg")}).code == ktl::cli::kIo);
    CHECK(ktlive({"validate", "-"}, "game buchi\nbogus\n").code == ktl::cli::kInput);
    CHECK(ktlive({}).code == ktl::cli::kUsage);
    CHECK(ktlive({"check-live", data("toggle.bg")}).code == ktl::cli::kUsage);  // -k missing
    CHECK(ktlive({"check-live", data("toggle.bg"), "-k", "0"}).code == ktl::cli::kUsage);
    CHECK(ktlive({"--cap", "5", "check-live", data("toggle.bg"), "-k", "2"}).code == ktl::cli::kUsage);
    CHECK(ktlive({"check-live", data("partial.bg"), "-k", "1"}).code == ktl::cli::kInput);
}

TEST_CASE("parse errors name the file, line and column")
{
    auto r = ktlive({"validate", "-"}, "game buchi\nalphabet1 a\nbad\n");
    CHECK(r.err.find("error: -:3:1: unknown directive 'bad'") != std::string::npos);
    auto t = ktlive({"product", data("toggle.bg"), "-t", data("toggle.bg")});
    CHECK(t.code == ktl::cli::kInput);
    CHECK(t.err.find(data("toggle.bg") + ":2:1: expected 'transducer") != std::string::npos);  // line 1 is a comment
}

TEST_CASE("validate prints violations and a report")
{
    auto r = ktlive({"validate", data("partial.bg")});
    CHECK(r.out.starts_with("VIOLATION totality s b\n"));
    CHECK(r.out.find("violations=1\n") != std::string::npos);
    CHECK(r.out.find("outcome=error\n") != std::string::npos);
}

TEST_CASE("complete writes a valid game to stdout and the report to stderr")
{
    auto r = ktlive({"complete", data("partial.bg")});
    CHECK(r.code == ktl::cli::kOk);
    ktl::GameGraph g = ktl::parse_game(r.out);
    CHECK(ktl::validate(g).empty());
    CHECK(r.err.find("outcome=ok") != std::string::npos);
}

TEST_CASE("check-live verdicts and witnesses")
{
    TempDir tmp;
    auto live = ktlive({"check-live", data("toggle.bg"), "-k", "2"});
    CHECK(live.code == ktl::cli::kOk);
    CHECK(live.out.find("verdict=live\n") != std::string::npos);
    CHECK(live.out.find("transducers=64\n") != std::string::npos);

    auto cnf = ktlive({"gen", "cnf", data("sat2.cnf")});
    REQUIRE(cnf.code == ktl::cli::kOk);
    auto dead = ktlive({"check-live", "-", "-k", "2", "--witness", tmp / "w.tr"}, cnf.out);
    CHECK(dead.code == ktl::cli::kNegative);
    CHECK(dead.out.find("verdict=not-live\n") != std::string::npos);
    std::string witness = slurp(tmp / "w.tr");
    CHECK(witness.starts_with("#"));
    auto doc = ktl::parse_transducer(witness);
    CHECK(doc.machine.states() == 2);

    // The witness drives the product into a losing position.
    auto product = ktlive({"product", "-", "-t", tmp / "w.tr", "--lassos", tmp / "l.txt"}, cnf.out);
    CHECK(product.code == ktl::cli::kOk);
    CHECK(slurp(tmp / "l.txt").find("LASSO prefix:") != std::string::npos);
}

TEST_CASE("solve and simulate")
{
    auto solve = ktlive({"solve", data("toggle.bg"), "-k", "2"});
    CHECK(solve.code == ktl::cli::kOk);
    CHECK(solve.out.find("winner=P2\n") != std::string::npos);
    auto via_live = ktlive({"solve", data("toggle.bg"), "-k", "2", "--method", "live"});
    CHECK(via_live.code == ktl::cli::kOk);

    auto sim = ktlive({"simulate", data("toggle.bg"), "--env", data("alternator.tr"), "-k", "2", "--trace", "-"});
    CHECK(sim.code == ktl::cli::kOk);
    CHECK(sim.out.starts_with("STEP 0 P1 a s\nSTEP 1 P2 c u ordinal=0 |M'|=1\n"));
    CHECK(sim.err.find("winner=P2\n") != std::string::npos);
    auto strict = ktlive({"simulate", data("toggle.bg"), "--env", data("alternator.tr"), "-k", "2", "--mode", "strict"});
    CHECK(strict.out.find("winner=P2\n") != std::string::npos);
}

TEST_CASE("gen and enumerate")
{
    auto qbf = ktlive({"gen", "qbf", data("example.qdimacs"), "--layout", "plain"});
    REQUIRE(qbf.code == ktl::cli::kOk);
    CHECK(ktl::parse_game(qbf.out) == ktl::parse_game(slurp(data("example_plain.bg"))));
    CHECK(qbf.err.find("valid=false\n") != std::string::npos);

    auto robot = ktlive({"gen", "robot", "--lanes", "2"});
    CHECK(ktl::parse_game(robot.out).size() == 124);
    CHECK(ktlive({"gen", "robot", "--lanes", "1"}).code == ktl::cli::kUsage);

    auto a = ktlive({"--seed", "7", "gen", "random", "--vertices", "9"});
    auto b = ktlive({"--seed", "7", "gen", "random", "--vertices", "9"});
    auto c = ktlive({"--seed", "8", "gen", "random", "--vertices", "9"});
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);

    auto count = ktlive({"enumerate", "-k", "2", "--outputs", "a,b", "--inputs", "c,d", "--count"});
    CHECK(count.out.find("count=64\n") != std::string::npos);
    auto deduped = ktlive({"enumerate", "-k", "2", "--outputs", "a,b", "--inputs", "c,d", "--count", "--dedupe"});
    CHECK(deduped.out.find("representatives=26\n") != std::string::npos);
    auto listed = ktlive({"enumerate", "-k", "1", "--game", data("toggle.bg")});
    CHECK(listed.out.starts_with("# ordinal 0\ntransducer k=1\n"));
    CHECK(listed.out.find("# ordinal 1\n") != std::string::npos);
}

TEST_CASE("JSON reports are complete and reproducible")
{
    TempDir tmp;
    auto run_once = [&](const std::string& name) {
        auto r = ktlive({"--deterministic", "--json-report", tmp / name, "check-live", data("toggle.bg"), "-k", "2", "--jobs", "1"});
        return std::make_pair(r, slurp(tmp / name));
    };
    auto [first, json_a] = run_once("a.json");
    auto [second, json_b] = run_once("b.json");
    CHECK(first.code == ktl::cli::kOk);
    CHECK(json_a == json_b);
    CHECK(first.out == second.out);

    auto j = nlohmann::json::parse(json_a);
    CHECK(j["command"] == "check-live");
    CHECK(j["version"] == std::string(ktl::cli::kVersion));
    CHECK(j["outcome"] == "ok");
    CHECK(j["parameters"]["k"] == 2);
    REQUIRE(j["inputs"].size() == 1);
    CHECK(j["inputs"][0]["path"] == data("toggle.bg"));
    CHECK(j["inputs"][0]["fnv1a64"].get<std::string>().size() == 16);
    CHECK(j["stats"]["verdict"] == "live");
    CHECK_FALSE(j["stats"].contains("seconds"));
}
