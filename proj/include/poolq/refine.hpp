#pragma once

#include "poolq/core.hpp"

namespace poolq {

/// Sentinel round count: iterate until the colour classes are stable.
inline constexpr int kRefineUntilStable = -1;

/// WL-1 colour refinement. Each round maps a node to a new colour determined
/// by (own colour, sorted multiset of neighbour colours); multiedges count
/// with multiplicity and a self-loop contributes the node's own colour once
/// per loop. rounds = 0 returns the canonicalized init;
/// rounds = kRefineUntilStable iterates to the fixed point.
Colouring refine_colours(const Graph& g, const Colouring& init, int rounds);

/// Same refinement applied to several graphs at once with one shared label
/// table, so equal (colour, neighbourhood) patterns get equal colour ids
/// across graphs. Output num_colours is the shared alphabet size.
std::vector<Colouring> refine_colours_joint(const std::vector<const Graph*>& graphs,
                                            const std::vector<Colouring>& init,
                                            int rounds);

struct Trajectory {
    std::vector<Colouring> rounds;  // colourings after 0..max_rounds rounds
    Colouring fixed_point;
    int stable_round = 0;
};

Trajectory refinement_trajectory(const Graph& g, const Colouring& init,
                                 int max_rounds);

}  // namespace poolq
