#pragma once

#include "poolq/core.hpp"

namespace poolq {

/// Discretize feature rows into colours: connect rows whose cosine
/// similarity is at least tau, colours are the connected components
/// (single-linkage transitive closure). A zero row is similar only to other
/// zero rows. Throws on NaN/Inf entries.
Colouring colours_from_features(const Matrix& x, double tau);

/// (tau, k/N) for every grid point; the grid must be sorted ascending.
std::vector<std::pair<double, double>> colour_count_curve(
    const Matrix& x, const std::vector<double>& taus);

/// Component colourings for a whole descending-threshold sweep at once.
/// Edges are unioned incrementally from high to low tau, so the sweep costs
/// one pairwise pass instead of one per grid point. Results are returned in
/// grid order (ascending tau).
std::vector<Colouring> colourings_over_grid(const Matrix& x,
                                            const std::vector<double>& taus);

}  // namespace poolq
