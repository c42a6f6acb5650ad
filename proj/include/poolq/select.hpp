#pragma once

#include "poolq/core.hpp"

#include <optional>

namespace poolq {

/// Witness that a colour appears in two different groups, which rules out
/// any single-layer select operator.
struct InfeasibilityCertificate {
    int colour = 0;
    int group_a = 0;
    int group_b = 0;
};

struct SelectOutcome {
    bool feasible = false;
    std::optional<Matrix> weights;  // |C| x k; argmax of (one-hot H) * W
    std::optional<InfeasibilityCertificate> certificate;
};

/// Decide whether a one-layer select operator on one-hot colours can produce
/// the target partition, and construct the weights when it can: each
/// colour's weight row is the indicator of its group. Infeasible exactly
/// when some colour spans two groups.
SelectOutcome construct_select(const Colouring& zeta, const Partition& target);

/// Group index per node from argmax of H * W (ties: lowest group index).
std::vector<int> apply_select(const Colouring& zeta, const Matrix& weights);

struct RefinementFeasibility {
    bool ever_feasible = false;
    int first_feasible_round = -1;  // valid when ever_feasible
    int stable_round = -1;          // round at which refinement stabilized
    std::optional<InfeasibilityCertificate> stable_certificate;
};

/// Scan refinement rounds r = 0..stability (capped by max_rounds) for the
/// first r where construct_select becomes feasible; when the stable
/// colouring still spans groups, no amount of message passing helps.
RefinementFeasibility feasible_after_refinement(const Graph& g,
                                                const Colouring& zeta,
                                                const Partition& target,
                                                int max_rounds);

}  // namespace poolq
