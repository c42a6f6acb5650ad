#include "poolq/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace poolq {
namespace {

// Signed-cosine comparisons get a tiny slack so that rescaled rows stay
// exactly-parallel at tau = 1.
constexpr double kSimEps = 1e-12;

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Rows normalized to unit length; zero rows stay zero and are marked.
// Similarity of two zero rows is 1, of a zero and a nonzero row 0.
struct NormalizedRows {
    Matrix rows;
    std::vector<bool> zero;
};

NormalizedRows normalize(const Matrix& x) {
    if (x.rows() < 1 || x.cols() < 1)
        throw std::invalid_argument("feature matrix must be nonempty");
    if (!x.allFinite())
        throw std::invalid_argument("feature matrix contains NaN or Inf");
    NormalizedRows out{x, std::vector<bool>(x.rows(), false)};
    for (int i = 0; i < x.rows(); ++i) {
        const double norm = out.rows.row(i).norm();
        if (norm == 0.0)
            out.zero[i] = true;
        else
            out.rows.row(i) /= norm;
    }
    return out;
}

double similarity(const NormalizedRows& nr, int i, int j) {
    if (nr.zero[i] || nr.zero[j]) return nr.zero[i] && nr.zero[j] ? 1.0 : 0.0;
    return nr.rows.row(i).dot(nr.rows.row(j));
}

Colouring components_to_colouring(UnionFind& uf) {
    std::vector<long long> roots(uf.parent.size());
    for (size_t v = 0; v < uf.parent.size(); ++v)
        roots[v] = uf.find(static_cast<int>(v));
    return canonicalize_colouring(roots);
}

}  // namespace

Colouring colours_from_features(const Matrix& x, double tau) {
    const auto nr = normalize(x);
    const int n = static_cast<int>(x.rows());
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (similarity(nr, i, j) >= tau - kSimEps) uf.unite(i, j);
    return components_to_colouring(uf);
}

std::vector<Colouring> colourings_over_grid(const Matrix& x,
                                            const std::vector<double>& taus) {
    if (taus.empty()) throw std::invalid_argument("empty tau grid");
    if (!std::is_sorted(taus.begin(), taus.end()))
        throw std::invalid_argument("tau grid must be sorted ascending");
    const auto nr = normalize(x);
    const int n = static_cast<int>(x.rows());

    // Pairs bucketed by the highest grid point they satisfy.
    const int m = static_cast<int>(taus.size());
    std::vector<std::vector<std::pair<int, int>>> buckets(m);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double sim = similarity(nr, i, j) + kSimEps;
            if (sim < taus.front()) continue;
            const auto it = std::upper_bound(taus.begin(), taus.end(), sim);
            buckets[static_cast<int>(it - taus.begin()) - 1].emplace_back(i, j);
        }
    }

    UnionFind uf(n);
    std::vector<Colouring> out(m);
    for (int t = m - 1; t >= 0; --t) {
        for (const auto& [i, j] : buckets[t]) uf.unite(i, j);
        out[t] = components_to_colouring(uf);
    }
    return out;
}

std::vector<std::pair<double, double>> colour_count_curve(
    const Matrix& x, const std::vector<double>& taus) {
    const auto colourings = colourings_over_grid(x, taus);
    std::vector<std::pair<double, double>> curve;
    curve.reserve(taus.size());
    for (size_t t = 0; t < taus.size(); ++t)
        curve.emplace_back(taus[t],
                           static_cast<double>(colourings[t].num_colours) / x.rows());
    return curve;
}

}  // namespace poolq
