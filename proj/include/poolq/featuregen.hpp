#pragma once

#include "poolq/core.hpp"

namespace poolq {

enum class RandomFeatureMode { Same, Mixed, Distinct };

std::string to_string(RandomFeatureMode m);

/// Random one-hot feature baselines.
/// Same: every node gets the same feature (d = 1).
/// Distinct: identity rows (d = n).
/// Mixed: the first ceil(n/2) nodes get distinct one-hots, the rest copy
/// rows drawn uniformly with replacement from the first half.
Matrix random_features(const Graph& g, RandomFeatureMode mode,
                       unsigned long long seed);

/// Matching discrete colours with ids shared across graphs: Same maps every
/// node everywhere to colour 0; Distinct/Mixed use the node index of the
/// one-hot row, so equal indices are equal colours in every graph.
Colouring random_feature_colouring(const Graph& g, RandomFeatureMode mode,
                                   unsigned long long seed);

/// Uniform i.i.d. colour per node from k colours, canonicalized; realized
/// |C| may be below k.
Colouring random_colouring(const Graph& g, int k, unsigned long long seed);

/// Exactly k colours spread over the nodes (balanced multiset, shuffled).
/// Used by the colourfulness curves, where the realized colour count must
/// hit the grid value; k = n yields all-unique colours.
Colouring random_colouring_exact(const Graph& g, int k,
                                 unsigned long long seed);

}  // namespace poolq
