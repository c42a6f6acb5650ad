#include "poolq/select.hpp"

#include "poolq/refine.hpp"

#include <stdexcept>

namespace poolq {

SelectOutcome construct_select(const Colouring& zeta, const Partition& target) {
    if (zeta.size() != target.num_nodes())
        throw std::invalid_argument("colouring and partition cover different node sets");

    std::vector<int> colour_group(zeta.num_colours, -1);
    for (int v = 0; v < zeta.size(); ++v) {
        const int c = zeta.colours[v];
        const int g = target.group_of(v);
        if (colour_group[c] == -1) {
            colour_group[c] = g;
        } else if (colour_group[c] != g) {
            SelectOutcome out;
            out.certificate = InfeasibilityCertificate{c, colour_group[c], g};
            return out;
        }
    }

    SelectOutcome out;
    out.feasible = true;
    Matrix w = Matrix::Zero(zeta.num_colours, target.num_groups());
    for (int c = 0; c < zeta.num_colours; ++c)
        if (colour_group[c] >= 0) w(c, colour_group[c]) = 1.0;
    out.weights = std::move(w);
    return out;
}

std::vector<int> apply_select(const Colouring& zeta, const Matrix& weights) {
    std::vector<int> groups(zeta.size());
    for (int v = 0; v < zeta.size(); ++v) {
        const auto row = weights.row(zeta.colours[v]);
        int best = 0;
        for (int j = 1; j < weights.cols(); ++j)
            if (row(j) > row(best)) best = j;
        groups[v] = best;
    }
    return groups;
}

RefinementFeasibility feasible_after_refinement(const Graph& g,
                                                const Colouring& zeta,
                                                const Partition& target,
                                                int max_rounds) {
    RefinementFeasibility result;
    auto cur = refine_colours(g, zeta, 0);
    for (int r = 0;; ++r) {
        const auto outcome = construct_select(cur, target);
        if (outcome.feasible) {
            result.ever_feasible = true;
            result.first_feasible_round = r;
            return result;
        }
        auto next = refine_colours(g, cur, 1);
        if (next.num_colours == cur.num_colours || r >= max_rounds ||
            r >= g.num_nodes()) {
            result.stable_round = r;
            result.stable_certificate = outcome.certificate;
            return result;
        }
        cur = std::move(next);
    }
}

}  // namespace poolq
