#pragma once

#include "poolq/core.hpp"
#include "poolq/spectral.hpp"

namespace poolq {

enum class NmiNormalization { Sqrt, ArithmeticMean };

/// Normalised mutual information between two partitions of the same node
/// set, from the contingency table with natural logs. Zero-entropy
/// convention: 1 when both partitions are single-group, 0 otherwise.
double nmi(const Partition& p, const Partition& q,
           NmiNormalization norm = NmiNormalization::Sqrt);

struct AlignmentMatrix {
    std::vector<std::string> labels;  // "SC(A)", "SC(X)", extras...
    Matrix values;                    // symmetric, unit diagonal
};

/// Pairwise NMI among the spectral partition of the adjacency matrix, the
/// spectral partition of the features, and any supplied extra partitions.
AlignmentMatrix alignment_matrix(
    const Graph& g, int k, unsigned long long seed,
    const std::vector<std::pair<std::string, Partition>>& extras = {},
    Affinity affinity = Affinity::Cosine,
    NmiNormalization norm = NmiNormalization::Sqrt);

}  // namespace poolq
