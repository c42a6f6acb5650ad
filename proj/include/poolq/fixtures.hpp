#pragma once

#include "poolq/core.hpp"
#include "poolq/quality.hpp"

namespace poolq::fixtures {

/// Seen/unseen colouring-partition pairs with known (gamma, lambda, q):
/// a -> (1,1,1), b -> (1,0,0), c -> (0,1,0), d -> (1,1,1).
struct ScorePair {
    ColouredPartition seen;
    ColouredPartition unseen;
};

ScorePair score_case(char which);  // 'a'..'d'

struct FeasibilityFixture {
    Graph graph;
    Partition target;
};

/// Two-community multigraph where refinement separates the communities
/// only after several rounds: infeasible early, feasible at stability.
FeasibilityFixture late_separation_graph();

/// Symmetric two-community graph whose stable colouring still spans both
/// communities: no refinement depth makes selection feasible.
FeasibilityFixture never_separates_graph();

/// Small two-community multigraph for spectral tests; the communities are
/// the two halves.
FeasibilityFixture two_community_multigraph();

}  // namespace poolq::fixtures
