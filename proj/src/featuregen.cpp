#include "poolq/featuregen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace poolq {
namespace {

std::vector<int> mixed_sources(int n, unsigned long long seed) {
    const int half = (n + 1) / 2;  // first ceil(n/2) nodes are distinct
    std::vector<int> src(n);
    std::iota(src.begin(), src.begin() + half, 0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, half - 1);
    for (int v = half; v < n; ++v) src[v] = pick(rng);
    return src;
}

}  // namespace

std::string to_string(RandomFeatureMode m) {
    switch (m) {
        case RandomFeatureMode::Same: return "same";
        case RandomFeatureMode::Mixed: return "mixed";
        case RandomFeatureMode::Distinct: return "distinct";
    }
    return "same";
}

Matrix random_features(const Graph& g, RandomFeatureMode mode,
                       unsigned long long seed) {
    const int n = g.num_nodes();
    switch (mode) {
        case RandomFeatureMode::Same:
            return Matrix::Ones(n, 1);
        case RandomFeatureMode::Distinct:
            return Matrix::Identity(n, n);
        case RandomFeatureMode::Mixed: {
            Matrix x = Matrix::Zero(n, n);
            const auto src = mixed_sources(n, seed);
            for (int v = 0; v < n; ++v) x(v, src[v]) = 1.0;
            return x;
        }
    }
    throw std::logic_error("unreachable");
}

Colouring random_feature_colouring(const Graph& g, RandomFeatureMode mode,
                                   unsigned long long seed) {
    const int n = g.num_nodes();
    Colouring c;
    switch (mode) {
        case RandomFeatureMode::Same:
            c.colours.assign(n, 0);
            c.num_colours = 1;
            return c;
        case RandomFeatureMode::Distinct:
            c.colours.resize(n);
            std::iota(c.colours.begin(), c.colours.end(), 0);
            c.num_colours = n;
            return c;
        case RandomFeatureMode::Mixed: {
            c.colours = mixed_sources(n, seed);
            c.num_colours = (n + 1) / 2;
            return c;
        }
    }
    throw std::logic_error("unreachable");
}

Colouring random_colouring(const Graph& g, int k, unsigned long long seed) {
    const int n = g.num_nodes();
    if (k < 1 || k > n) throw std::invalid_argument("colour count out of range");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, k - 1);
    std::vector<int> raw(n);
    for (int v = 0; v < n; ++v) raw[v] = pick(rng);
    return canonicalize_colouring(raw);
}

Colouring random_colouring_exact(const Graph& g, int k,
                                 unsigned long long seed) {
    const int n = g.num_nodes();
    if (k < 1 || k > n) throw std::invalid_argument("colour count out of range");
    std::vector<int> raw(n);
    for (int v = 0; v < n; ++v) raw[v] = v % k;
    std::mt19937_64 rng(seed);
    std::shuffle(raw.begin(), raw.end(), rng);
    return canonicalize_colouring(raw);
}

}  // namespace poolq
