#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "poolq/featuregen.hpp"

#include <set>

using namespace poolq;

namespace {

Graph path(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("same: one shared feature and one shared colour") {
    const auto g = path(5);
    const auto x = random_features(g, RandomFeatureMode::Same, 1);
    CHECK(x.rows() == 5);
    CHECK(x.cols() == 1);
    CHECK(x.minCoeff() == 1.0);
    const auto c = random_feature_colouring(g, RandomFeatureMode::Same, 1);
    CHECK(c.num_colours == 1);
    // Shared across graphs: a different graph gets the same colour id.
    const auto c2 = random_feature_colouring(path(3), RandomFeatureMode::Same, 9);
    CHECK(c2.colours[0] == c.colours[0]);
}

TEST_CASE("distinct: identity features, all-unique colours") {
    const auto g = path(4);
    const auto x = random_features(g, RandomFeatureMode::Distinct, 1);
    CHECK(x == Matrix::Identity(4, 4));
    const auto c = random_feature_colouring(g, RandomFeatureMode::Distinct, 1);
    CHECK(c.colours == std::vector<int>{0, 1, 2, 3});
    CHECK(c.num_colours == 4);
}

TEST_CASE("mixed: first half distinct, second half copies from the first") {
    const auto g = path(7);
    const auto c = random_feature_colouring(g, RandomFeatureMode::Mixed, 5);
    const int half = 4;  // ceil(7/2)
    for (int v = 0; v < half; ++v) CHECK(c.colours[v] == v);
    for (int v = half; v < 7; ++v) {
        CHECK(c.colours[v] >= 0);
        CHECK(c.colours[v] < half);
    }
    // Features are the matching one-hot rows.
    const auto x = random_features(g, RandomFeatureMode::Mixed, 5);
    for (int v = 0; v < 7; ++v) {
        CHECK(x.row(v).sum() == 1.0);
        CHECK(x(v, c.colours[v]) == 1.0);
    }
}

TEST_CASE("mixed is deterministic in the seed and varies across seeds") {
    const auto g = path(9);
    const auto a = random_feature_colouring(g, RandomFeatureMode::Mixed, 3);
    const auto b = random_feature_colouring(g, RandomFeatureMode::Mixed, 3);
    CHECK(a.colours == b.colours);
    bool differs = false;
    for (unsigned long long s = 0; s < 20 && !differs; ++s)
        differs = random_feature_colouring(g, RandomFeatureMode::Mixed, s).colours !=
                  a.colours;
    CHECK(differs);
}

TEST_CASE("random colouring: canonical ids, at most k colours") {
    const auto g = path(12);
    const auto c = random_colouring(g, 4, 11);
    CHECK(c.num_colours <= 4);
    CHECK(c.num_colours >= 1);
    std::set<int> seen(c.colours.begin(), c.colours.end());
    CHECK(static_cast<int>(seen.size()) == c.num_colours);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == c.num_colours - 1);
    CHECK(random_colouring(g, 4, 11).colours == c.colours);
}

TEST_CASE("exact random colouring always realizes its colour budget") {
    const auto g = path(10);
    for (int k = 1; k <= 10; ++k) {
        for (unsigned long long seed = 0; seed < 10; ++seed) {
            const auto c = random_colouring_exact(g, k, seed);
            CHECK(c.num_colours == k);
        }
    }
    // k = n means all-unique colours.
    const auto all = random_colouring_exact(g, 10, 1);
    std::set<int> seen(all.colours.begin(), all.colours.end());
    CHECK(seen.size() == 10);
}

TEST_CASE("exact random colouring is roughly balanced") {
    const auto g = path(12);
    const auto c = random_colouring_exact(g, 4, 2);
    std::vector<int> counts(4, 0);
    for (int v : c.colours) ++counts[v];
    for (int k = 0; k < 4; ++k) CHECK(counts[k] == 3);
}

TEST_CASE("colour budgets out of range are rejected") {
    const auto g = path(5);
    CHECK_THROWS_AS(random_colouring(g, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_colouring(g, 6, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_colouring_exact(g, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_colouring_exact(g, 6, 1), std::invalid_argument);
}
