#include "poolq/refine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace poolq {
namespace {

using Key = std::pair<int, std::vector<int>>;

// Globally canonicalize: relabel colours by first appearance across all
// graphs. Exact table of keys per round, no raw hashing; exactness is cheap
// at this scale and the quality measures are exact-match sensitive.
std::vector<Colouring> canonicalize_joint(const std::vector<const Graph*>& graphs,
                                          const std::vector<Colouring>& init) {
    std::map<int, int> ids;
    std::vector<Colouring> out(init.size());
    for (size_t g = 0; g < init.size(); ++g) {
        out[g].colours.reserve(init[g].colours.size());
        for (int c : init[g].colours) {
            auto [it, ins] = ids.emplace(c, static_cast<int>(ids.size()));
            out[g].colours.push_back(it->second);
        }
    }
    for (auto& c : out) c.num_colours = static_cast<int>(ids.size());
    return out;
}

int total_colours(const std::vector<Colouring>& cs) {
    return cs.empty() ? 0 : cs.front().num_colours;
}

std::vector<Colouring> one_round(const std::vector<const Graph*>& graphs,
                                 const std::vector<Colouring>& cur) {
    std::map<Key, int> table;
    std::vector<Colouring> next(cur.size());
    for (size_t g = 0; g < graphs.size(); ++g) {
        const Graph& graph = *graphs[g];
        next[g].colours.resize(graph.num_nodes());
        for (int v = 0; v < graph.num_nodes(); ++v) {
            Key key;
            key.first = cur[g].colours[v];
            key.second.reserve(graph.degree(v));
            for (int u : graph.neighbours(v)) key.second.push_back(cur[g].colours[u]);
            std::sort(key.second.begin(), key.second.end());
            auto [it, ins] = table.emplace(std::move(key), static_cast<int>(table.size()));
            next[g].colours[v] = it->second;
        }
    }
    for (auto& c : next) c.num_colours = static_cast<int>(table.size());
    return next;
}

}  // namespace

std::vector<Colouring> refine_colours_joint(const std::vector<const Graph*>& graphs,
                                            const std::vector<Colouring>& init,
                                            int rounds) {
    if (graphs.size() != init.size())
        throw std::invalid_argument("one initial colouring per graph required");
    int total_nodes = 0;
    for (size_t g = 0; g < graphs.size(); ++g) {
        if (static_cast<int>(init[g].colours.size()) != graphs[g]->num_nodes())
            throw std::invalid_argument("initial colouring length mismatch");
        total_nodes += graphs[g]->num_nodes();
    }
    auto cur = canonicalize_joint(graphs, init);
    // Refinement only ever splits classes, so |C| stalls exactly at the
    // fixed point; n rounds is a hard cap.
    const int max_rounds = rounds == kRefineUntilStable ? total_nodes : rounds;
    for (int r = 0; r < max_rounds; ++r) {
        auto next = one_round(graphs, cur);
        const bool stable = total_colours(next) == total_colours(cur);
        cur = std::move(next);
        if (stable && rounds == kRefineUntilStable) break;
    }
    return cur;
}

Colouring refine_colours(const Graph& g, const Colouring& init, int rounds) {
    return refine_colours_joint({&g}, {init}, rounds).front();
}

Trajectory refinement_trajectory(const Graph& g, const Colouring& init,
                                 int max_rounds) {
    Trajectory traj;
    auto cur = refine_colours(g, init, 0);
    traj.rounds.push_back(cur);
    traj.stable_round = -1;
    for (int r = 1; r <= std::max(max_rounds, 0) || traj.stable_round < 0; ++r) {
        auto next = refine_colours_joint({&g}, {cur}, 1).front();
        const bool stable = next.num_colours == cur.num_colours;
        if (stable && traj.stable_round < 0) traj.stable_round = r - 1;
        if (r <= max_rounds) traj.rounds.push_back(next);
        cur = std::move(next);
        if (r > g.num_nodes() + 1) break;  // WL bound, defensive
    }
    traj.fixed_point = std::move(cur);
    return traj;
}

}  // namespace poolq
