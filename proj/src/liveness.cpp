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

#include "ktl/liveness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace ktl {

std::string_view to_string(LiveOutcome outcome)
{
    switch (outcome) {
    case LiveOutcome::Live: return "live";
    case LiveOutcome::NotLive: return "not-live";
    case LiveOutcome::UndecidedAtCap: return "undecided-at-cap";
    }
    return "undecided-at-cap";
}

namespace {

std::optional<LivenessWitness> check_with(const GameGraph& g, const Transducer& t, ForcedProduct& fp, std::vector<VertexId>& index)
{
    build_forced_product(g, t, fp, index);
    auto region = one_player_region(fp.arena, g.objective());
    for (VertexId x = 0; x < region.size(); ++x)
        if (!region[x]) return LivenessWitness{t, {0}, access_word(fp, x), fp.positions[x]};
    return std::nullopt;
}

void require_game(const GameGraph& g)
{
    if (!g.is_total()) throw std::invalid_argument("liveness needs a total game (run complete first)");
    if (!g.initial()) throw std::invalid_argument("game has no initial vertex");
}

}  // namespace

std::optional<LivenessWitness> check_transducer(const GameGraph& g, const Transducer& t)
{
    require_game(g);
    ForcedProduct fp;
    std::vector<VertexId> index;
    auto w = check_with(g, t, fp, index);
    if (w && t.initial() == 0) w->index = canonical_ordinal(t);
    return w;
}

LivenessVerdict check_k_live(const GameGraph& g, unsigned k, const LivenessOptions& options)
{
    require_game(g);
    if (k == 0) throw std::invalid_argument("k must be positive");
    const auto started = std::chrono::steady_clock::now();
    const auto sigma = static_cast<unsigned>(g.alphabet(Player::One).size());
    const auto gamma = static_cast<unsigned>(g.alphabet(Player::Two).size());

    LivenessVerdict verdict;
    verdict.total = count_transducers(k, sigma, gamma);
    const bool capped = verdict.total > options.cap;
    const std::uint64_t limit = capped ? options.cap : verdict.total.convert_to<std::uint64_t>();

    constexpr std::uint64_t kBlock = 1024;
    const std::uint64_t blocks = (limit + kBlock - 1) / kBlock;
    constexpr auto kNone = std::numeric_limits<std::uint64_t>::max();

    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> hit_block{kNone};
    std::mutex mutex;
    std::optional<LivenessWitness> best;
    // Per-block tallies up to the hit so the stats do not depend on scheduling.
    std::vector<std::uint32_t> examined(blocks, 0), solved(blocks, 0);

    auto worker = [&] {
        ForcedProduct fp;
        std::vector<VertexId> index;
        for (;;) {
            std::uint64_t b = next_block.fetch_add(1);
            if (b >= blocks || b > hit_block.load()) return;
            if (!options.deterministic && hit_block.load() != kNone) return;
            std::uint64_t first = b * kBlock;
            std::uint64_t last = std::min(limit, first + kBlock);
            TransducerOdometer odo(k, sigma, gamma, first);
            for (std::uint64_t o = first;;) {
                ++examined[b];
                const Transducer& t = odo.current();
                if (!options.dedupe || is_behavioral_representative(t)) {
                    ++solved[b];
                    if (auto w = check_with(g, t, fp, index)) {
                        w->index = {o};
                        std::lock_guard lock(mutex);
                        if (!best || o < best->index.ordinal) best = std::move(w);
                        if (b < hit_block.load()) hit_block.store(b);
                        break;
                    }
                }
                if (++o >= last) break;
                odo.advance();
                if (!options.deterministic && hit_block.load() != kNone) break;
            }
        }
    };

    unsigned jobs = std::max(1u, options.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
    }

    std::uint64_t upto = best ? hit_block.load() + 1 : blocks;
    for (std::uint64_t b = 0; b < upto; ++b) {
        verdict.stats.examined += examined[b];
        verdict.stats.products_solved += solved[b];
    }
    if (best) {
        verdict.outcome = LiveOutcome::NotLive;
        verdict.witness = std::move(best);
    } else {
        verdict.outcome = capped ? LiveOutcome::UndecidedAtCap : LiveOutcome::Live;
    }
    verdict.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return verdict;
}

bool verify_witness(const GameGraph& g, unsigned k, const LivenessWitness& w)
{
    const auto& t = w.machine;
    if (t.states() > k) return false;
    if (t.output_size() != g.alphabet(Player::One).size() || t.input_size() != g.alphabet(Player::Two).size()) return false;
    if (w.position.is_top() || w.position.state >= t.states() || w.position.vertex >= g.size()) return false;
    try {
        if (!agrees(Word{w.alpha, {}}, t)) return false;
        ProductGame p = build_product(g, t);
        ProductPlay play = play_product(p, w.alpha);
        if (play.hit_top) return false;
        auto pos = p.find(w.position.vertex, w.position.state);
        if (!pos || play.visited.back() != *pos) return false;
        return !p2_winning_positions(p).p2_wins[*pos];
    } catch (const std::exception&) {
        return false;
    }
}

namespace {

struct PrefixTree {
    struct Node {
        std::optional<Action> label;
        std::vector<std::uint32_t> child;  // per input, 0 = none (the root is never a child)
    };
    std::vector<Node> nodes;
};

class AgreementSearch {
public:
    AgreementSearch(const PrefixTree& tree, unsigned k, unsigned outputs, unsigned inputs)
        : tree_(tree), k_(k), outputs_(outputs), inputs_(inputs), digits_(k + static_cast<std::size_t>(k) * inputs, kFree)
    {
    }

    std::optional<Transducer> run()
    {
        if (!search(0)) return std::nullopt;
        Transducer t(k_, outputs_, inputs_);
        for (State m = 0; m < k_; ++m) t.set_label(m, digits_[m]);
        for (State m = 0; m < k_; ++m)
            for (Action b = 0; b < inputs_; ++b) t.set_next(m, b, digits_[k_ + m * inputs_ + b]);
        return t;
    }

private:
    static constexpr unsigned kFree = ~0u;

    // Walks the tree along assigned transitions and checks assigned labels.
    bool consistent() const
    {
        std::vector<std::pair<std::uint32_t, State>> stack{{0, 0}};
        while (!stack.empty()) {
            auto [node, m] = stack.back();
            stack.pop_back();
            const auto& n = tree_.nodes[node];
            if (n.label && digits_[m] != kFree && digits_[m] != *n.label) return false;
            for (Action b = 0; b < inputs_; ++b) {
                if (!n.child[b]) continue;
                unsigned to = digits_[k_ + m * inputs_ + b];
                if (to != kFree) stack.emplace_back(n.child[b], to);
            }
        }
        return true;
    }

    bool search(std::size_t d)
    {
        if (d == digits_.size()) return true;
        unsigned radix = d < k_ ? outputs_ : k_;
        for (unsigned v = 0; v < radix; ++v) {
            digits_[d] = v;
            if (consistent() && search(d + 1)) return true;
        }
        digits_[d] = kFree;
        return false;
    }

    const PrefixTree& tree_;
    unsigned k_, outputs_, inputs_;
    std::vector<unsigned> digits_;
};

}  // namespace

std::optional<Transducer> word_in_Ak(std::span<const Word> words, unsigned k, unsigned outputs, unsigned inputs)
{
    if (k == 0 || outputs == 0 || inputs == 0) throw std::invalid_argument("word_in_Ak needs k >= 1 and nonempty alphabets");
    PrefixTree tree;
    tree.nodes.push_back({std::nullopt, std::vector<std::uint32_t>(inputs, 0)});
    for (const auto& w : words) {
        if (!w.finite()) throw std::invalid_argument("word_in_Ak takes finite words");
        std::uint32_t node = 0;
        for (std::size_t i = 0; i < w.prefix.size(); ++i) {
            Action a = w.prefix[i];
            if (i % 2 == 0) {
                if (a >= outputs) throw std::out_of_range("Player-1 action outside the output alphabet");
                auto& label = tree.nodes[node].label;
                if (label && *label != a) return std::nullopt;  // same input prefix, different outputs
                label = a;
            } else {
                if (a >= inputs) throw std::out_of_range("Player-2 action outside the input alphabet");
                if (!tree.nodes[node].child[a]) {
                    tree.nodes[node].child[a] = static_cast<std::uint32_t>(tree.nodes.size());
                    tree.nodes.push_back({std::nullopt, std::vector<std::uint32_t>(inputs, 0)});
                }
                node = tree.nodes[node].child[a];
            }
        }
    }
    return AgreementSearch(tree, k, outputs, inputs).run();
}

std::optional<Transducer> word_in_Ak(const Word& w, unsigned k, unsigned outputs, unsigned inputs)
{
    return word_in_Ak(std::span<const Word>(&w, 1), k, outputs, inputs);
}

}  // namespace ktl
