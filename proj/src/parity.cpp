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
#include <deque>
#include <numeric>
#include <set>

#include "ktl/game.hpp"

namespace ktl {

namespace {

/// Reachability targets become absorbing and Büchi colors collapse to {1,2}.
Arena encode(const Arena& in, Objective objective)
{
    if (objective == Objective::Parity) return in;
    Arena out;
    out.owner = in.owner;
    out.first.push_back(0);
    for (VertexId v = 0; v < in.size(); ++v) {
        bool target = in.color[v] == 2;
        out.color.push_back(target ? 2 : 1);
        if (objective == Objective::Reachability && target) {
            out.label.push_back(in.label[in.begin(v)]);
            out.target.push_back(v);
        } else {
            for (auto e = in.begin(v); e < in.end(v); ++e) {
                out.label.push_back(in.label[e]);
                out.target.push_back(in.target[e]);
            }
        }
        out.first.push_back(static_cast<std::uint32_t>(out.target.size()));
    }
    return out;
}

class Zielonka {
public:
    explicit Zielonka(const Arena& arena)
        : a_(arena), n_(arena.size()), attr_stamp_(n_, 0), count_stamp_(n_, 0), count_(n_, 0)
    {
        pred_first_.assign(n_ + 1, 0);
        for (VertexId t : a_.target) ++pred_first_[t + 1];
        for (std::size_t i = 0; i < n_; ++i) pred_first_[i + 1] += pred_first_[i];
        pred_src_.resize(a_.target.size());
        pred_label_.resize(a_.target.size());
        std::vector<std::uint32_t> fill(pred_first_.begin(), pred_first_.end() - 1);
        for (VertexId v = 0; v < n_; ++v) {
            for (auto e = a_.begin(v); e < a_.end(v); ++e) {
                auto slot = fill[a_.target[e]]++;
                pred_src_[slot] = v;
                pred_label_[slot] = a_.label[e];
            }
        }
        sol_.winner.assign(n_, Player::One);
        sol_.strategy.assign(n_, 0);
    }

    Solution run()
    {
        std::vector<VertexId> all(n_);
        std::iota(all.begin(), all.end(), 0);
        std::vector<char> in(n_, 1);
        solve(std::move(all), std::move(in));
        return std::move(sol_);
    }

private:
    // Solves the subgame given by `verts` (membership mask `in`). The second
    // recursive call of the classical formulation is turned into the loop.
    void solve(std::vector<VertexId> verts, std::vector<char> in)
    {
        while (!verts.empty()) {
            unsigned d = 0;
            for (VertexId v : verts) d = std::max(d, a_.color[v]);
            Player p = d % 2 == 0 ? Player::Two : Player::One;
            std::vector<VertexId> top;
            for (VertexId v : verts)
                if (a_.color[v] == d) top.push_back(v);

            auto attracted = attract(in, top, p);
            std::vector<char> sub_in = in;
            for (VertexId v : attracted) sub_in[v] = 0;
            std::vector<VertexId> sub;
            for (VertexId v : verts)
                if (sub_in[v]) sub.push_back(v);
            solve(sub, std::move(sub_in));

            std::vector<VertexId> lost;
            for (VertexId v : sub)
                if (sol_.winner[v] != p) lost.push_back(v);
            if (lost.empty()) {
                for (VertexId v : attracted) sol_.winner[v] = p;
                for (VertexId v : top)
                    if (a_.owner[v] == p) sol_.strategy[v] = any_move(in, v);
                return;
            }
            auto opp = attract(in, lost, opponent(p));
            for (VertexId v : opp) {
                sol_.winner[v] = opponent(p);
                in[v] = 0;
            }
            std::erase_if(verts, [&](VertexId v) { return !in[v]; });
        }
    }

    Action any_move(const std::vector<char>& in, VertexId v) const
    {
        for (auto e = a_.begin(v); e < a_.end(v); ++e)
            if (in[a_.target[e]]) return a_.label[e];
        return a_.label[a_.begin(v)];
    }

    std::vector<VertexId> attract(const std::vector<char>& in, const std::vector<VertexId>& targets, Player p)
    {
        ++stamp_;
        std::vector<VertexId> out = targets;
        for (VertexId v : targets) attr_stamp_[v] = stamp_;
        for (std::size_t head = 0; head < out.size(); ++head) {
            VertexId x = out[head];
            for (auto i = pred_first_[x]; i < pred_first_[x + 1]; ++i) {
                VertexId u = pred_src_[i];
                if (!in[u] || attr_stamp_[u] == stamp_) continue;
                if (a_.owner[u] == p) {
                    attr_stamp_[u] = stamp_;
                    sol_.strategy[u] = pred_label_[i];
                    out.push_back(u);
                    continue;
                }
                if (count_stamp_[u] != stamp_) {
                    count_stamp_[u] = stamp_;
                    count_[u] = 0;
                    for (auto e = a_.begin(u); e < a_.end(u); ++e)
                        if (in[a_.target[e]]) ++count_[u];
                }
                if (--count_[u] == 0) {
                    attr_stamp_[u] = stamp_;
                    out.push_back(u);
                }
            }
        }
        return out;
    }

    const Arena& a_;
    std::size_t n_;
    std::vector<std::uint32_t> pred_first_;
    std::vector<VertexId> pred_src_;
    std::vector<Action> pred_label_;
    std::vector<std::uint32_t> attr_stamp_;
    std::vector<std::uint32_t> count_stamp_;
    std::vector<std::uint32_t> count_;
    std::uint32_t stamp_ = 0;
    Solution sol_;
};

void require_nonblocking(const Arena& arena)
{
    for (VertexId v = 0; v < arena.size(); ++v)
        if (arena.begin(v) == arena.end(v)) throw std::invalid_argument("vertex " + std::to_string(v) + " has no outgoing edge");
}

/// Strongly connected components of the subgraph induced by `keep`; -1 outside.
/// `cyclic[c]` tells whether component c contains a cycle.
std::vector<int> components(const Arena& a, const std::vector<char>& keep, std::vector<char>& cyclic)
{
    const auto n = a.size();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<VertexId> stack;
    std::vector<std::pair<VertexId, std::uint32_t>> call;
    int counter = 0;
    int ncomp = 0;
    cyclic.clear();
    for (VertexId root = 0; root < n; ++root) {
        if (!keep[root] || index[root] != -1) continue;
        call.emplace_back(root, a.begin(root));
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, e] = call.back();
            if (e < a.end(v)) {
                VertexId w = a.target[e++];
                if (!keep[w]) continue;
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, a.begin(w));
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            VertexId done = v;
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
            if (low[done] != index[done]) continue;
            std::size_t members = 0;
            VertexId w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp[w] = ncomp;
                ++members;
            } while (w != done);
            bool self = false;
            for (auto f = a.begin(done); f < a.end(done); ++f) self = self || a.target[f] == done;
            cyclic.push_back(members > 1 || self);
            ++ncomp;
        }
    }
    return comp;
}

/// Good cycle targets of a one-player arena: for each even color d, the
/// color-d vertices on a cycle through vertices of color at most d.
struct GoodTargets {
    std::vector<char> good;
    std::vector<std::pair<unsigned, std::vector<int>>> scc;  // per even color

    const std::vector<int>& scc_of(unsigned d) const
    {
        for (const auto& [c, ids] : scc)
            if (c == d) return ids;
        throw std::logic_error("no component table for color");
    }
};

GoodTargets good_targets(const Arena& a, Objective objective)
{
    GoodTargets out;
    out.good.assign(a.size(), 0);
    if (objective == Objective::Reachability) {
        for (VertexId v = 0; v < a.size(); ++v) out.good[v] = a.color[v] == 2;
        return out;
    }
    std::set<unsigned> evens;
    for (unsigned c : a.color)
        if (c % 2 == 0) evens.insert(c);
    if (objective == Objective::Buchi) evens = {2};
    for (unsigned d : evens) {
        std::vector<char> keep(a.size());
        for (VertexId v = 0; v < a.size(); ++v) keep[v] = objective == Objective::Buchi || a.color[v] <= d;
        std::vector<char> cyclic;
        auto comp = components(a, keep, cyclic);
        for (VertexId v = 0; v < a.size(); ++v)
            if (a.color[v] == d && comp[v] >= 0 && cyclic[comp[v]]) out.good[v] = 1;
        out.scc.emplace_back(d, std::move(comp));
    }
    return out;
}

std::vector<char> backward_reach(const Arena& a, const std::vector<char>& from)
{
    std::vector<std::vector<VertexId>> preds(a.size());
    for (VertexId v = 0; v < a.size(); ++v)
        for (auto e = a.begin(v); e < a.end(v); ++e) preds[a.target[e]].push_back(v);
    std::vector<char> in = from;
    std::deque<VertexId> queue;
    for (VertexId v = 0; v < a.size(); ++v)
        if (in[v]) queue.push_back(v);
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (VertexId u : preds[x])
            if (!in[u]) {
                in[u] = 1;
                queue.push_back(u);
            }
    }
    return in;
}

struct Path {
    std::vector<Step> steps;
    VertexId end;
};

/// Shortest path from `from` to a vertex satisfying `goal` through vertices
/// accepted by `allowed`. With `nonempty`, `from` itself only counts after at
/// least one step.
template <class Goal, class Allowed>
std::optional<Path> shortest_path(const Arena& a, VertexId from, Goal goal, Allowed allowed, bool nonempty)
{
    if (!nonempty && goal(from)) return Path{{}, from};
    std::vector<VertexId> parent(a.size(), kNoVertex);
    std::vector<std::uint32_t> parent_edge(a.size(), 0);
    std::vector<char> seen(a.size(), 0);
    seen[from] = 1;
    std::deque<VertexId> queue{from};
    while (!queue.empty()) {
        VertexId x = queue.front();
        queue.pop_front();
        for (auto e = a.begin(x); e < a.end(x); ++e) {
            VertexId y = a.target[e];
            if (!allowed(y)) continue;
            if (goal(y)) {
                std::vector<Step> steps{Step{x, a.label[e]}};
                for (VertexId c = x; c != from; c = parent[c]) steps.push_back(Step{parent[c], a.label[parent_edge[c]]});
                std::reverse(steps.begin(), steps.end());
                return Path{std::move(steps), y};
            }
            if (seen[y]) continue;
            seen[y] = 1;
            parent[y] = x;
            parent_edge[y] = e;
            queue.push_back(y);
        }
    }
    return std::nullopt;
}

std::optional<Lasso> lasso_with(const Arena& a, Objective objective, const GoodTargets& targets, const std::vector<char>& region, VertexId from)
{
    if (!region[from]) return std::nullopt;
    auto to_good = shortest_path(
        a, from, [&](VertexId v) { return targets.good[v] != 0; }, [](VertexId) { return true; }, false);
    if (!to_good) return std::nullopt;
    Lasso lasso;
    VertexId t = to_good->end;

    if (objective == Objective::Reachability) {
        // Continue from the target along first edges until a vertex repeats.
        std::vector<Step> steps = std::move(to_good->steps);
        std::vector<VertexId> visited;
        for (const auto& s : steps) visited.push_back(s.vertex);
        VertexId x = t;
        while (std::find(visited.begin(), visited.end(), x) == visited.end()) {
            visited.push_back(x);
            steps.push_back(Step{x, a.label[a.begin(x)]});
            x = a.target[a.begin(x)];
        }
        auto head = std::find(visited.begin(), visited.end(), x) - visited.begin();
        lasso.prefix.assign(steps.begin(), steps.begin() + head);
        lasso.cycle.assign(steps.begin() + head, steps.end());
        return lasso;
    }

    const auto& comp = targets.scc_of(objective == Objective::Buchi ? 2 : a.color[t]);
    int c = comp[t];
    auto cycle = shortest_path(
        a, t, [&](VertexId v) { return v == t; }, [&](VertexId v) { return comp[v] == c; }, true);
    if (!cycle) return std::nullopt;
    lasso.prefix = std::move(to_good->steps);
    lasso.cycle = std::move(cycle->steps);
    return lasso;
}

void require_one_player(const Arena& a)
{
    for (VertexId v = 0; v < a.size(); ++v) {
        auto degree = a.end(v) - a.begin(v);
        if (a.owner[v] == Player::One && degree != 1)
            throw std::invalid_argument("owner-1 vertex " + std::to_string(v) + " must have exactly one outgoing edge");
        if (degree == 0) throw std::invalid_argument("vertex " + std::to_string(v) + " has no outgoing edge");
    }
}

}  // namespace

Solution solve_parity(const Arena& arena, Objective objective)
{
    require_nonblocking(arena);
    Arena encoded = encode(arena, objective);
    return Zielonka(encoded).run();
}

Solution solve_parity(const GameGraph& g)
{
    if (!g.is_total()) throw std::invalid_argument("solve_parity requires a total game");
    return solve_parity(make_arena(g), g.objective());
}

std::vector<bool> one_player_region(const Arena& arena, Objective objective)
{
    require_one_player(arena);
    auto targets = good_targets(arena, objective);
    auto region = backward_reach(arena, targets.good);
    return std::vector<bool>(region.begin(), region.end());
}

std::optional<Lasso> one_player_lasso(const Arena& arena, Objective objective, VertexId from)
{
    require_one_player(arena);
    auto targets = good_targets(arena, objective);
    auto region = backward_reach(arena, targets.good);
    return lasso_with(arena, objective, targets, region, from);
}

OnePlayerSolution solve_one_player(const GameGraph& g)
{
    Arena arena = make_arena(g);
    require_one_player(arena);
    auto targets = good_targets(arena, g.objective());
    auto region = backward_reach(arena, targets.good);
    OnePlayerSolution out;
    out.p2_wins.assign(region.begin(), region.end());
    out.witness.resize(g.size());
    for (VertexId v = 0; v < g.size(); ++v)
        if (region[v]) out.witness[v] = lasso_with(arena, g.objective(), targets, region, v);
    return out;
}

}  // namespace ktl
