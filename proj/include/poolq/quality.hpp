#pragma once

#include "poolq/core.hpp"

#include <cstddef>
#include <vector>

namespace poolq {

/// One graph's colouring paired with its reference partition.
struct ColouredPartition {
    Colouring zeta;
    Partition partition;
};

struct GammaResult {
    double value = 0.0;
    std::vector<int> invalid_colours;
};

/// Fraction of valid colours: a colour is valid when all of its nodes lie in
/// one group. Single pass over the nodes with a colour -> group table;
/// O(|V|) time, O(|V| + |C|) space. Colours absent from the graph do not
/// count towards |C|.
GammaResult gamma(const Colouring& zeta, const Partition& p);

struct LambdaFullResult {
    int value = 0;  // 0 or 1
    std::vector<int> unmatched_groups;  // unseen group indices
    std::size_t membership_ops = 0;     // hash-set inserts + lookups
};

/// 1 iff every unseen group's colour set is a subset of some seen group's
/// colour set. Early exit on the first unmatched group; average runtime
/// O(|V_u| * |P_s| + |V_s|).
LambdaFullResult lambda_full(const Colouring& zeta_s, const Partition& p_s,
                             const Colouring& zeta_u, const Partition& p_u);

/// Matched unseen groups / |P_u|.
double lambda_ratio(const Colouring& zeta_s, const Partition& p_s,
                    const Colouring& zeta_u, const Partition& p_u);

/// 1 iff any seen group, across all seen graphs, contains the colour set of
/// the unseen group (given by its node list and colouring).
int lambda_group(const std::vector<const ColouredPartition*>& seen,
                 const Colouring& zeta_u, const std::vector<int>& group_u);

/// Combined quality of one seen/unseen pair. Gamma is the multi-graph
/// average over the two graphs; q = min(gamma, lambda).
QualityReport q_single(const Colouring& zeta_s, const Partition& p_s,
                       const Colouring& zeta_u, const Partition& p_u,
                       TransferVariant variant = TransferVariant::Full);

/// Mean per-graph validity.
double gamma_bar(const std::vector<ColouredPartition>& graphs);

/// Dataset transferability over a seen/unseen split.
/// Full:  fraction of unseen graphs matched by at least one seen graph.
/// Ratio: mean over unseen graphs of the best per-graph matched-group ratio.
/// Group: fraction of all unseen groups matched by any seen group anywhere.
double lambda_bar(const std::vector<ColouredPartition>& graphs,
                  const std::vector<int>& seen, const std::vector<int>& unseen,
                  TransferVariant variant);

/// min(mean validity over all graphs, lambda_bar); diagnostics list invalid
/// colours and unmatched unseen groups.
QualityReport q_bar(const std::vector<ColouredPartition>& graphs,
                    const std::vector<int>& seen, const std::vector<int>& unseen,
                    TransferVariant variant);

struct TauSweepPoint {
    double tau = 0.0;
    double gamma_bar = 0.0;
    double lambda_bar = 0.0;
    double q_bar = 0.0;
    double k_over_n = 0.0;  // mean per-graph colour ratio before refinement
};

struct TauSweepResult {
    double tau_star = 0.0;
    double q_star = 0.0;
    double k_over_n_star = 0.0;
    std::vector<TauSweepPoint> curve;
};

/// Optimize the resolution threshold. For each tau, validity and k/N come
/// from per-graph discretization; transferability discretizes each
/// seen/unseen pair's pooled rows so similar vectors share a colour across
/// the pair. Refinement (when requested) is per graph for validity and
/// jointly tabled per pair for transferability. Ties go to the smallest tau.
TauSweepResult sweep_tau(const std::vector<const Graph*>& graphs,
                         const std::vector<Matrix>& features,
                         const std::vector<Partition>& partitions,
                         const std::vector<int>& seen,
                         const std::vector<int>& unseen, int cr_rounds,
                         const std::vector<double>& tau_grid,
                         TransferVariant variant);

/// Score already-discrete shared-alphabet colourings (no tau involved).
TauSweepPoint score_colourings(const std::vector<const Graph*>& graphs,
                               const std::vector<Colouring>& colours,
                               const std::vector<Partition>& partitions,
                               const std::vector<int>& seen,
                               const std::vector<int>& unseen, int cr_rounds,
                               TransferVariant variant);

}  // namespace poolq
