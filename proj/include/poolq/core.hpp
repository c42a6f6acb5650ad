#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poolq {

using Matrix = Eigen::MatrixXd;
using Edge = std::pair<int, int>;

/// Undirected multigraph. Self-loops and parallel edges are kept and count
/// with multiplicity in degrees and walks. Immutable after construction.
class Graph {
public:
    Graph(int n, std::vector<Edge> edges,
          std::optional<Matrix> features = std::nullopt);

    int num_nodes() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_features() const { return features_.has_value(); }
    const Matrix& features() const;
    void set_features(Matrix x);

    /// Adjacency lists with multiplicity; a self-loop (v,v) appears once
    /// in adj(v).
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    /// Dense adjacency matrix; A(i,j) = multiplicity, a loop adds 1 to A(i,i).
    Matrix adjacency_matrix() const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::optional<Matrix> features_;
    std::vector<std::vector<int>> adj_;
};

/// Total map node -> colour index. Canonical form: indices are contiguous,
/// 0..num_colours-1, ordered by first appearance.
struct Colouring {
    std::vector<int> colours;
    int num_colours = 0;

    int size() const { return static_cast<int>(colours.size()); }
    std::vector<std::vector<int>> colour_classes() const;
};

/// Disjoint nonempty node groups covering 0..n-1.
class Partition {
public:
    explicit Partition(std::vector<std::vector<int>> groups);

    int num_groups() const { return static_cast<int>(groups_.size()); }
    int num_nodes() const { return n_; }
    const std::vector<std::vector<int>>& groups() const { return groups_; }
    const std::vector<int>& group(int j) const { return groups_[j]; }
    int group_of(int v) const { return node_group_[v]; }

    /// Binary N x k membership matrix.
    Matrix assignment() const;

    bool operator==(const Partition& other) const {
        return node_group_ == other.node_group_ &&
               num_groups() == other.num_groups();
    }

private:
    std::vector<std::vector<int>> groups_;
    std::vector<int> node_group_;
    int n_ = 0;
};

enum class TransferVariant { Full, Ratio, Group };

std::string to_string(TransferVariant v);
TransferVariant transfer_variant_from_string(const std::string& s);

/// Scores for one seen/unseen pair or a whole dataset. q == min(gamma, lambda).
struct QualityReport {
    double gamma = 0.0;
    double lambda = 0.0;
    double q = 0.0;
    std::vector<int> invalid_colours;
    std::vector<std::pair<int, int>> unmatched_groups;  // (graph id, group idx)
    TransferVariant variant = TransferVariant::Full;
};

/// Relabel arbitrary labels to contiguous colour ids by first appearance.
Colouring canonicalize_colouring(const std::vector<long long>& raw);
Colouring canonicalize_colouring(const std::vector<int>& raw);

/// Read a hard partition off a binary N x k assignment matrix. All-zero
/// columns are dropped; *dropped_empty, when given, reports whether any were.
Partition partition_from_assignment(const Matrix& s,
                                    bool* dropped_empty = nullptr);

}  // namespace poolq
