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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ktl/game.hpp"
#include "ktl/liveness.hpp"
#include "ktl/product.hpp"
#include "ktl/random.hpp"
#include "ktl/reductions.hpp"
#include "ktl/synthesis.hpp"
#include "ktl/transducer.hpp"

namespace ktl::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

InputError located(const std::string& path, const ParseError& e)
{
    return InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.message());
}

std::string fnv1a(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

// Interleaved words use alphabet1 at even and alphabet2 at odd positions.
std::string join_word(const GameGraph& g, std::span<const Action> actions, std::size_t offset = 0)
{
    std::string out;
    for (std::size_t i = 0; i < actions.size(); ++i)
        out += (i ? " " : "") + g.alphabet((i + offset) % 2 == 0 ? Player::One : Player::Two).at(actions[i]);
    return out;
}

struct Globals {
    unsigned jobs = 1;
    std::uint64_t seed = 0;
    std::uint64_t cap = kDefaultCap;
    std::string json_report;
    bool deterministic = false;
};

struct Session {
    Session(std::istream& i, std::ostream& o, std::ostream& e) : in(i), out(o), err(e) {}

    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    Globals globals;

    std::string command;
    json inputs = json::array();
    json parameters = json::object();
    json stats = json::object();
    std::string outcome = "ok";
    bool stdin_used = false;
    // Key-value lines go to stdout unless a document is written there.
    bool document_on_stdout = false;

    std::string read(const std::string& path)
    {
        std::string text;
        if (path.empty() || path == "-") {
            if (stdin_used) throw InputError("standard input can be read only once");
            stdin_used = true;
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        } else {
            std::ifstream file(path, std::ios::binary);
            if (!file) throw IoError("cannot read " + path);
            std::ostringstream buf;
            buf << file.rdbuf();
            text = buf.str();
        }
        inputs.push_back({{"path", path.empty() ? "-" : path}, {"fnv1a64", fnv1a(text)}});
        return text;
    }

    void write(const std::string& path, const std::string& text)
    {
        if (path.empty() || path == "-") {
            document_on_stdout = true;
            out << text;
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file || !(file << text)) throw IoError("cannot write " + path);
    }

    GameGraph game(const std::string& path)
    {
        std::string text = read(path);
        try {
            return parse_game(text);
        } catch (const ParseError& e) {
            throw located((path.empty() ? "-" : path), e);
        }
    }

    Transducer machine(const std::string& path, const GameGraph& g)
    {
        std::string text = read(path);
        try {
            return bind_to_game(parse_transducer(text), g);
        } catch (const ParseError& e) {
            throw located(path, e);
        }
    }

    // Solvers need a well-formed game; completion stays explicit.
    void require_valid(const GameGraph& g)
    {
        auto violations = validate(g);
        if (violations.empty()) return;
        std::string msg = "game is not valid (" + std::to_string(violations.size()) + " violations, first: " + describe(g, violations.front()) + ")";
        if (!g.is_total()) msg += "; run 'complete' first";
        throw InputError(msg);
    }

    json summary() const
    {
        return {{"command", command},   {"inputs", inputs},   {"parameters", parameters},
                {"outcome", outcome},   {"stats", stats},     {"version", std::string(kVersion)}};
    }

    void report()
    {
        std::ostream& os = document_on_stdout ? err : out;
        os << "outcome=" << outcome << '\n';
        for (const auto& [key, value] : stats.items()) os << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        if (!globals.json_report.empty()) {
            std::ofstream file(globals.json_report);
            if (!file || !(file << summary().dump(2) << '\n')) throw IoError("cannot write " + globals.json_report);
        }
    }
};

std::string big(const BigCount& n) { return n.str(); }

// ---------------------------------------------------------------------------

int cmd_validate(Session& s, const std::string& path)
{
    GameGraph g = s.game(path);
    auto violations = validate(g);
    for (const auto& v : violations) s.out << describe(g, v) << '\n';
    s.stats["vertices"] = g.size();
    s.stats["violations"] = violations.size();
    s.outcome = violations.empty() ? "ok" : "error";
    return violations.empty() ? kOk : kNegative;
}

int cmd_complete(Session& s, const std::string& path, const std::string& output)
{
    GameGraph g = s.game(path);
    GameGraph c = complete(g);
    s.write(output, serialize_game(c));
    s.stats["vertices_before"] = g.size();
    s.stats["vertices_after"] = c.size();
    return kOk;
}

struct ProductArgs {
    std::string game, machine, output, lassos;
    bool full = false;
};

int cmd_product(Session& s, const ProductArgs& a)
{
    GameGraph g = s.game(a.game);
    s.require_valid(g);
    Transducer t = s.machine(a.machine, g);
    ProductGame p = build_product(g, t, {a.full});
    s.parameters["full"] = a.full;
    s.write(a.output, serialize_game(p.graph));
    auto solution = p2_winning_positions(p);
    if (!a.lassos.empty()) {
        std::string text;
        for (VertexId x = 0; x < p.graph.size(); ++x) {
            if (!solution.p2_wins[x]) continue;
            Word w = solution.witness[x]->word();
            bool p1_first = p.graph.owner(x) == Player::One;
            text += "# " + p.graph.vertex(x).name + "\n";
            text += "LASSO prefix: " + join_word(g, w.prefix, p1_first ? 0 : 1) + " cycle: " +
                    join_word(g, w.cycle, (w.prefix.size() + (p1_first ? 0 : 1)) % 2) + "\n";
        }
        s.write(a.lassos, text);
    }
    s.stats["positions"] = p.graph.size();
    s.stats["initial_winner"] = solution.p2_wins[p.initial()] ? "P2" : "P1";
    return kOk;
}

struct LiveArgs {
    std::string game, witness;
    unsigned k = 1;
    bool dedupe = false;
};

int live_exit(LiveOutcome o)
{
    switch (o) {
    case LiveOutcome::Live: return kOk;
    case LiveOutcome::NotLive: return kNegative;
    case LiveOutcome::UndecidedAtCap: return kUsage;
    }
    return kUsage;
}

int run_live(Session& s, const GameGraph& g, const LiveArgs& a)
{
    LivenessOptions options;
    options.dedupe = a.dedupe;
    options.jobs = s.globals.jobs;
    options.deterministic = s.globals.deterministic || s.globals.jobs <= 1;
    options.cap = s.globals.cap;
    s.parameters["k"] = a.k;
    s.parameters["dedupe"] = a.dedupe;
    LivenessVerdict v = check_k_live(g, a.k, options);
    s.outcome = v.live() ? "ok" : std::string(to_string(v.outcome));
    s.stats["verdict"] = std::string(to_string(v.outcome));
    s.stats["transducers"] = big(v.total);
    s.stats["examined"] = v.stats.examined;
    s.stats["products_solved"] = v.stats.products_solved;
    if (!s.globals.deterministic) s.stats["seconds"] = v.stats.seconds;
    if (v.witness) {
        const auto& w = *v.witness;
        s.stats["witness_ordinal"] = w.index.ordinal;
        s.stats["witness_alpha"] = join_word(g, w.alpha);
        s.stats["witness_position"] = "(" + g.vertex(w.position.vertex).name + "," + std::to_string(w.position.state) + ")";
        if (!a.witness.empty()) {
            std::string text = "# ordinal " + std::to_string(w.index.ordinal) + "\n# alpha" + (w.alpha.empty() ? "" : " " + join_word(g, w.alpha)) + "\n# position (" +
                               g.vertex(w.position.vertex).name + "," + std::to_string(w.position.state) + ")\n" +
                               serialize_transducer(w.machine, g);
            s.write(a.witness, text);
        }
    }
    return live_exit(v.outcome);
}

int cmd_check_live(Session& s, const LiveArgs& a)
{
    GameGraph g = s.game(a.game);
    s.require_valid(g);
    return run_live(s, g, a);
}

struct SolveArgs {
    std::string game, method = "belief";
    unsigned k = 1;
    std::uint64_t position_cap = 1'000'000;
    bool dedupe = false;
};

int cmd_solve(Session& s, const SolveArgs& a)
{
    GameGraph g = s.game(a.game);
    s.require_valid(g);
    s.parameters["method"] = a.method;
    if (a.method == "live") {
        int code = run_live(s, g, {a.game, {}, a.k, a.dedupe});
        if (code == kOk) s.stats["winner"] = "P2";
        return code;
    }
    BoundedOptions options;
    options.position_cap = a.position_cap;
    options.machine_cap = s.globals.cap;
    options.dedupe = a.dedupe;
    s.parameters["k"] = a.k;
    s.parameters["dedupe"] = a.dedupe;
    s.parameters["position_cap"] = a.position_cap;
    BoundedResult r = solve_bounded(g, a.k, options);
    s.stats["machines"] = r.machines.size();
    s.stats["positions"] = r.positions.size();
    switch (r.outcome) {
    case BoundedOutcome::P2Wins:
        s.outcome = "ok";
        s.stats["winner"] = "P2";
        return kOk;
    case BoundedOutcome::P1Wins:
        s.outcome = "p1-wins";
        s.stats["winner"] = "P1";
        return kNegative;
    case BoundedOutcome::UndecidedAtCap: break;
    }
    s.outcome = "undecided-at-cap";
    return kUsage;
}

struct SimulateArgs {
    std::string game, env, trace, mode = "replay";
    unsigned k = 1;
    std::uint64_t max_steps = 1'000'000;
};

int cmd_simulate(Session& s, const SimulateArgs& a)
{
    GameGraph g = s.game(a.game);
    s.require_valid(g);
    Transducer hidden = s.machine(a.env, g);
    AdaptiveController controller(g, a.k, a.mode == "strict" ? ControllerMode::StrictSpace : ControllerMode::LogReplay);
    Trace trace = simulate(g, controller, hidden, a.max_steps);
    s.parameters["k"] = a.k;
    s.parameters["mode"] = a.mode;
    s.parameters["max_steps"] = a.max_steps;
    if (!a.trace.empty()) s.write(a.trace, format_trace(g, trace));
    BigCount bound = steps_bound(g.size(), a.k, static_cast<unsigned>(g.alphabet(Player::One).size()),
                                 static_cast<unsigned>(g.alphabet(Player::Two).size()));
    s.stats["winner"] = trace.winner ? (*trace.winner == Player::Two ? "P2" : "P1") : "none";
    s.stats["steps"] = trace.steps;
    s.stats["bound"] = big(bound);
    s.stats["switches"] = controller.switches();
    if (trace.lasso) s.stats["lasso_cycle"] = trace.lasso->cycle.size();
    if (!trace.winner) {
        s.outcome = "undecided-at-cap";
        return kUsage;
    }
    s.outcome = *trace.winner == Player::Two ? "ok" : "p1-wins";
    return *trace.winner == Player::Two ? kOk : kNegative;
}

struct GenArgs {
    std::string input, output, objective = "reachability", layout = "checked";
    unsigned lanes = 3, vertices = 8, sigma = 2, gamma = 2, max_color = 4;
};

int cmd_gen(Session& s, const std::string& kind, const GenArgs& a)
{
    GameGraph g;
    s.parameters["kind"] = kind;
    try {
        if (kind == "qbf") {
            QbfFormula psi = parse_qdimacs(s.read(a.input));
            s.parameters["layout"] = a.layout;
            g = qbf_to_game(psi, a.layout == "plain" ? QbfLayout::Plain : QbfLayout::Checked);
            s.stats["formula"] = to_string(psi);
            s.stats["valid"] = qbf_brute_force(psi);
        } else if (kind == "cnf") {
            CnfFormula phi = parse_dimacs(s.read(a.input));
            g = cnf_to_game(phi);
            s.stats["formula"] = to_string(phi);
            s.stats["satisfiable"] = sat_brute_force(phi).has_value();
        } else if (kind == "robot") {
            s.parameters["lanes"] = a.lanes;
            g = robot_scenario(a.lanes);
        } else {
            auto objective = objective_from_string(a.objective);
            if (!objective) throw InputError("unknown objective " + a.objective);
            Rng rng(s.globals.seed);
            s.parameters["seed"] = s.globals.seed;
            s.parameters["vertices"] = a.vertices;
            g = random_game({a.vertices, a.sigma, a.gamma, *objective, a.max_color, 0.2}, rng);
        }
    } catch (const ParseError& e) {
        throw located((a.input.empty() ? "-" : a.input), e);
    }
    s.write(a.output, serialize_game(g));
    s.stats["vertices"] = g.size();
    return kOk;
}

struct EnumerateArgs {
    std::string game, output;
    std::vector<std::string> outputs, inputs;
    unsigned k = 1;
    bool count = false, dedupe = false;
    std::uint64_t limit = 0;
};

int cmd_enumerate(Session& s, EnumerateArgs a)
{
    if (!a.game.empty()) {
        GameGraph g = s.game(a.game);
        a.outputs = g.alphabet(Player::One);
        a.inputs = g.alphabet(Player::Two);
    }
    if (a.outputs.empty() || a.inputs.empty()) throw InputError("give --game or both --outputs and --inputs");
    const auto sigma = static_cast<unsigned>(a.outputs.size()), gamma = static_cast<unsigned>(a.inputs.size());
    BigCount total = count_transducers(a.k, sigma, gamma);
    s.parameters["k"] = a.k;
    s.parameters["dedupe"] = a.dedupe;
    s.stats["count"] = big(total);
    if (a.count && !a.dedupe) return kOk;
    if (total > BigCount(s.globals.cap)) {
        s.outcome = "undecided-at-cap";
        return kUsage;
    }
    std::string text;
    std::uint64_t emitted = 0;
    TransducerOdometer odo(a.k, sigma, gamma);
    std::uint64_t ordinal = 0;
    do {
        if (!a.dedupe || is_behavioral_representative(odo.current())) {
            if (!a.count && (a.limit == 0 || emitted < a.limit))
                text += "# ordinal " + std::to_string(ordinal) + "\n" + serialize_transducer(odo.current(), a.inputs, a.outputs) + "\n";
            ++emitted;
        }
        ++ordinal;
    } while (odo.advance());
    if (a.dedupe) s.stats["representatives"] = emitted;
    if (!a.count) s.write(a.output, text);
    return kOk;
}

std::vector<std::string> split_symbols(const std::string& csv)
{
    std::vector<std::string> out;
    std::stringstream in(csv);
    for (std::string item; std::getline(in, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    Session s(in, out, err);
    CLI::App app{"k-transducer liveness and bounded synthesis for turn-based games", "ktlive"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));
    app.add_option("--jobs", s.globals.jobs, "worker threads for enumeration sweeps")->check(CLI::PositiveNumber);
    app.add_option("--seed", s.globals.seed, "seed for random generators");
    app.add_option("--cap", s.globals.cap, "largest transducer stream to enumerate");
    app.add_option("--json-report", s.globals.json_report, "write the run summary as JSON");
    app.add_flag("--deterministic", s.globals.deterministic, "reproducible output (lowest-ordinal witnesses, no timings)");

    std::string game_path, output;
    auto* validate_cmd = app.add_subcommand("validate", "check a game document");
    validate_cmd->add_option("game", game_path, "game file, '-' for stdin");

    auto* complete_cmd = app.add_subcommand("complete", "route missing edges to the opponent's paradise");
    complete_cmd->add_option("game", game_path);
    complete_cmd->add_option("-o,--output", output);

    ProductArgs product;
    auto* product_cmd = app.add_subcommand("product", "product of a game with a transducer");
    product_cmd->add_option("game", product.game);
    product_cmd->add_option("-t,--machine", product.machine, "transducer file")->required();
    product_cmd->add_option("-o,--output", product.output);
    product_cmd->add_option("--lassos", product.lassos, "write Player-2 winning lassos to this file");
    product_cmd->add_flag("--full", product.full, "keep all of V x M, not only reachable positions");

    LiveArgs live;
    auto* live_cmd = app.add_subcommand("check-live", "decide k-transducer liveness");
    live_cmd->add_option("game", live.game);
    live_cmd->add_option("-k", live.k)->required()->check(CLI::PositiveNumber);
    live_cmd->add_flag("--dedupe", live.dedupe, "one machine per behavior");
    live_cmd->add_option("--witness", live.witness, "write the counterexample machine here");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "bounded synthesis against k-transducer environments");
    solve_cmd->add_option("game", solve.game);
    solve_cmd->add_option("-k", solve.k)->required()->check(CLI::PositiveNumber);
    solve_cmd->add_option("--method", solve.method)->check(CLI::IsMember({"belief", "live"}));
    solve_cmd->add_option("--position-cap", solve.position_cap);
    solve_cmd->add_flag("--dedupe", solve.dedupe);

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "play the adaptive controller against a hidden transducer");
    simulate_cmd->add_option("game", sim.game);
    simulate_cmd->add_option("--env", sim.env, "hidden environment transducer")->required();
    simulate_cmd->add_option("-k", sim.k)->required()->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--max-steps", sim.max_steps);
    simulate_cmd->add_option("--trace", sim.trace, "write the play here, '-' for stdout");
    simulate_cmd->add_option("--mode", sim.mode)->check(CLI::IsMember({"replay", "strict"}));

    GenArgs gen;
    std::string gen_kind;
    auto* gen_cmd = app.add_subcommand("gen", "generate games");
    gen_cmd->add_option("kind", gen_kind)->required()->check(CLI::IsMember({"qbf", "cnf", "robot", "random"}));
    gen_cmd->add_option("input", gen.input, "formula file for qbf and cnf, '-' for stdin");
    gen_cmd->add_option("-o,--output", gen.output);
    gen_cmd->add_option("--layout", gen.layout, "qbf: 'checked' (default) or 'plain'")->check(CLI::IsMember({"checked", "plain"}));
    gen_cmd->add_option("--lanes", gen.lanes)->check(CLI::Range(2u, 64u));
    gen_cmd->add_option("--vertices", gen.vertices)->check(CLI::Range(2u, 100000u));
    gen_cmd->add_option("--sigma", gen.sigma)->check(CLI::Range(1u, 64u));
    gen_cmd->add_option("--gamma", gen.gamma)->check(CLI::Range(1u, 64u));
    gen_cmd->add_option("--objective", gen.objective)->check(CLI::IsMember({"reachability", "buchi", "parity"}));
    gen_cmd->add_option("--max-color", gen.max_color);

    EnumerateArgs en;
    std::string outputs_csv, inputs_csv;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "count or list k-transducers in ordinal order");
    enumerate_cmd->add_option("-k", en.k)->required()->check(CLI::PositiveNumber);
    enumerate_cmd->add_option("--game", en.game, "take the alphabets from this game");
    enumerate_cmd->add_option("--outputs", outputs_csv, "comma-separated output symbols");
    enumerate_cmd->add_option("--inputs", inputs_csv, "comma-separated input symbols");
    enumerate_cmd->add_flag("--count", en.count);
    enumerate_cmd->add_flag("--dedupe", en.dedupe);
    enumerate_cmd->add_option("--limit", en.limit);
    enumerate_cmd->add_option("-o,--output", en.output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    auto* sub = app.get_subcommands().front();
    s.command = sub->get_name();
    int code = kOk;
    try {
        if (sub == validate_cmd) code = cmd_validate(s, game_path);
        else if (sub == complete_cmd) code = cmd_complete(s, game_path, output);
        else if (sub == product_cmd) code = cmd_product(s, product);
        else if (sub == live_cmd) code = cmd_check_live(s, live);
        else if (sub == solve_cmd) code = cmd_solve(s, solve);
        else if (sub == simulate_cmd) code = cmd_simulate(s, sim);
        else if (sub == gen_cmd) code = cmd_gen(s, gen_kind, gen);
        else {
            en.outputs = split_symbols(outputs_csv);
            en.inputs = split_symbols(inputs_csv);
            code = cmd_enumerate(s, en);
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        s.outcome = "error";
        code = kIo;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        s.outcome = "error";
        code = kInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        s.outcome = "error";
        code = kInput;
    }
    try {
        s.report();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIo;
    }
    return code;
}

}  // namespace ktl::cli
