#pragma once

#include "poolq/core.hpp"

namespace poolq {

struct EigenDecomposition {
    Eigen::VectorXd values;   // ascending
    Matrix vectors;           // orthonormal columns, values(i) <-> col(i)
};

/// Full decomposition of a symmetric matrix (checked to 1e-10).
EigenDecomposition sym_eigen(const Matrix& m);

/// D - A with multiedge multiplicities.
Matrix combinatorial_laplacian(const Graph& g);

/// I - D^{-1/2} A D^{-1/2}; rows of isolated nodes become identity rows.
Matrix normalized_laplacian(const Graph& g);

enum class Affinity { Cosine, Rbf };

std::string to_string(Affinity a);
Affinity affinity_from_string(const std::string& s);

/// Default cluster count for reference partitions: max(2, round(sqrt(n/2))),
/// capped at n.
int default_num_clusters(int n);

/// Spectral clustering of the adjacency matrix: embed into the k lowest
/// eigenvectors of L_sym, row-normalize, k-means++ with 20 restarts.
/// Empty clusters are dropped from the returned partition.
Partition spectral_partition(const Graph& g, int k, unsigned long long seed);

/// Spectral clustering of feature rows through an affinity matrix
/// (cosine similarity shifted to [0,1] by default).
Partition feature_spectral_partition(const Matrix& x, int k,
                                     unsigned long long seed,
                                     Affinity affinity = Affinity::Cosine);

/// Eigenvectors 2..d+1 of L_sym, each column sign-fixed so its
/// largest-magnitude entry is positive (ties: lowest index). Zero-padded
/// when the graph has fewer than d+1 eigenvectors.
Matrix laplacian_pe(const Graph& g, int d);

/// Column t = diag((D^{-1} A)^t) for t = 1..d. Isolated nodes get zero rows.
Matrix random_walk_pe(const Graph& g, int d);

/// Plain k-means on raw rows (k-means++ seeding, restarts, best objective).
/// Exposed for tests that need an embedding-free oracle.
std::vector<int> kmeans(const Matrix& points, int k, unsigned long long seed,
                        int restarts = 20);

}  // namespace poolq
