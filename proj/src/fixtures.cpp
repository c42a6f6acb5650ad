#include "poolq/fixtures.hpp"

#include <stdexcept>

namespace poolq::fixtures {
namespace {

Colouring make_colouring(std::vector<int> colours, int alphabet) {
    Colouring c;
    c.colours = std::move(colours);
    c.num_colours = alphabet;
    return c;
}

}  // namespace

ScorePair score_case(char which) {
    switch (which) {
        case 'a':
            // Singleton groups, matching singleton colours on both sides.
            return {{make_colouring({0, 1}, 2), Partition({{0}, {1}})},
                    {make_colouring({0, 1}, 2), Partition({{0}, {1}})}};
        case 'b':
            // Valid everywhere, but both unseen groups pick up a colour the
            // seen graph never pairs with the rest: nothing transfers.
            return {{make_colouring({0, 1, 2, 3, 4, 5}, 8),
                     Partition({{0, 1, 2}, {3, 4, 5}})},
                    {make_colouring({0, 6, 1, 2, 3, 7, 4, 5}, 8),
                     Partition({{0, 1, 2, 3}, {4, 5, 6, 7}})}};
        case 'c':
            // One colour across two groups: invalid, yet trivially transfers.
            return {{make_colouring({0, 0}, 1), Partition({{0}, {1}})},
                    {make_colouring({0, 0}, 1), Partition({{0}, {1}})}};
        case 'd':
            // Unseen singleton groups sit inside the seen colour sets.
            return {{make_colouring({0, 1, 2, 3, 4, 5}, 6),
                     Partition({{0, 1, 2}, {3, 4, 5}})},
                    {make_colouring({2, 3}, 6), Partition({{0}, {1}})}};
        default:
            throw std::invalid_argument("unknown score case");
    }
}

FeasibilityFixture late_separation_graph() {
    // Triangle 0-1-2, tail 2-3-4, doubled edge 4-5. Degrees alone merge
    // {2,4} and later {3,5} across the cut; the doubled edge breaks the
    // symmetry only once its effect propagates back down the tail.
    std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 2}, {2, 3},
                               {3, 4}, {4, 5}, {4, 5}};
    return {Graph(6, std::move(edges)), Partition({{0, 1, 2}, {3, 4, 5}})};
}

FeasibilityFixture never_separates_graph() {
    // 6-cycle: vertex-transitive, so refinement never leaves the uniform
    // colouring and any 2-group target stays out of reach.
    std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}};
    return {Graph(6, std::move(edges)), Partition({{0, 1, 2}, {3, 4, 5}})};
}

FeasibilityFixture two_community_multigraph() {
    // Two doubled triangles joined by a single bridge.
    std::vector<Edge> edges;
    for (auto [a, b] : {Edge{0, 1}, Edge{0, 2}, Edge{1, 2}, Edge{3, 4},
                        Edge{3, 5}, Edge{4, 5}}) {
        edges.emplace_back(a, b);
        edges.emplace_back(a, b);
    }
    edges.emplace_back(2, 3);
    return {Graph(6, std::move(edges)), Partition({{0, 1, 2}, {3, 4, 5}})};
}

}  // namespace poolq::fixtures
