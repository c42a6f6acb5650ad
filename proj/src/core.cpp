#include "poolq/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace poolq {

Graph::Graph(int n, std::vector<Edge> edges, std::optional<Matrix> features)
    : n_(n), edges_(std::move(edges)), features_(std::move(features)) {
    if (n_ < 1) throw std::invalid_argument("empty graph");
    adj_.resize(n_);
    for (const auto& [u, v] : edges_) {
        if (u < 0 || u >= n_ || v < 0 || v >= n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v) {
            adj_[u].push_back(u);
        } else {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
    }
    if (features_ && features_->rows() != n_)
        throw std::invalid_argument("feature matrix must have one row per node");
}

const Matrix& Graph::features() const {
    if (!features_) throw std::logic_error("graph has no features");
    return *features_;
}

void Graph::set_features(Matrix x) {
    if (x.rows() != n_)
        throw std::invalid_argument("feature matrix must have one row per node");
    features_ = std::move(x);
}

Matrix Graph::adjacency_matrix() const {
    Matrix a = Matrix::Zero(n_, n_);
    for (const auto& [u, v] : edges_) {
        if (u == v) {
            a(u, u) += 1.0;
        } else {
            a(u, v) += 1.0;
            a(v, u) += 1.0;
        }
    }
    return a;
}

std::vector<std::vector<int>> Colouring::colour_classes() const {
    std::vector<std::vector<int>> classes(num_colours);
    for (int v = 0; v < size(); ++v) classes[colours[v]].push_back(v);
    return classes;
}

Partition::Partition(std::vector<std::vector<int>> groups)
    : groups_(std::move(groups)) {
    for (const auto& g : groups_) {
        n_ += static_cast<int>(g.size());
        if (g.empty()) throw std::invalid_argument("empty group");
    }
    node_group_.assign(n_, -1);
    for (int j = 0; j < num_groups(); ++j) {
        for (int v : groups_[j]) {
            if (v < 0 || v >= n_ || node_group_[v] != -1)
                throw std::invalid_argument("groups must partition 0..n-1");
            node_group_[v] = j;
        }
    }
}

Matrix Partition::assignment() const {
    Matrix s = Matrix::Zero(n_, num_groups());
    for (int v = 0; v < n_; ++v) s(v, node_group_[v]) = 1.0;
    return s;
}

std::string to_string(TransferVariant v) {
    switch (v) {
        case TransferVariant::Full: return "full";
        case TransferVariant::Ratio: return "ratio";
        case TransferVariant::Group: return "group";
    }
    return "full";
}

TransferVariant transfer_variant_from_string(const std::string& s) {
    if (s == "full") return TransferVariant::Full;
    if (s == "ratio") return TransferVariant::Ratio;
    if (s == "group") return TransferVariant::Group;
    throw std::invalid_argument("unknown transferability variant: " + s);
}

namespace {

template <typename T>
Colouring canonicalize_impl(const std::vector<T>& raw) {
    if (raw.empty()) throw std::invalid_argument("empty graph");
    Colouring out;
    out.colours.reserve(raw.size());
    std::unordered_map<T, int> ids;
    for (const T& label : raw) {
        auto [it, inserted] = ids.emplace(label, static_cast<int>(ids.size()));
        out.colours.push_back(it->second);
    }
    out.num_colours = static_cast<int>(ids.size());
    return out;
}

}  // namespace

Colouring canonicalize_colouring(const std::vector<long long>& raw) {
    return canonicalize_impl(raw);
}

Colouring canonicalize_colouring(const std::vector<int>& raw) {
    return canonicalize_impl(raw);
}

Partition partition_from_assignment(const Matrix& s, bool* dropped_empty) {
    const int n = static_cast<int>(s.rows());
    const int k = static_cast<int>(s.cols());
    std::vector<std::vector<int>> groups(k);
    for (int i = 0; i < n; ++i) {
        int ones = 0;
        int col = -1;
        for (int j = 0; j < k; ++j) {
            const double x = s(i, j);
            if (x != 0.0 && x != 1.0)
                throw std::invalid_argument("assignment matrix must be binary");
            if (x == 1.0) {
                ++ones;
                col = j;
            }
        }
        if (ones != 1) throw std::invalid_argument("not a hard partition");
        groups[col].push_back(i);
    }
    const auto removed = std::erase_if(groups, [](const auto& g) { return g.empty(); });
    if (dropped_empty) *dropped_empty = removed > 0;
    return Partition(std::move(groups));
}

}  // namespace poolq
