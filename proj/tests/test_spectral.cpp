#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "poolq/fixtures.hpp"
#include "poolq/spectral.hpp"

#include <cmath>
#include <random>

using namespace poolq;

namespace {

double eigen_residual(const Matrix& m, const EigenDecomposition& eig) {
    return (m * eig.vectors - eig.vectors * eig.values.asDiagonal())
        .cwiseAbs()
        .maxCoeff();
}

}  // namespace

TEST_CASE("eigendecomposition: residual and orthonormality on random matrices") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 49);
        Matrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
        Matrix m = (a + a.transpose()) / 2.0;

        const auto eig = sym_eigen(m);
        CHECK(eigen_residual(m, eig) <= 1e-8);
        CHECK((eig.vectors.transpose() * eig.vectors - Matrix::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10);
        for (int i = 1; i < n; ++i) CHECK(eig.values(i) >= eig.values(i - 1));
    }
}

TEST_CASE("eigendecomposition rejects asymmetric input") {
    Matrix m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(sym_eigen(m), std::invalid_argument);
}

TEST_CASE("K2 spectra are exact") {
    Graph k2(2, {{0, 1}});
    const auto comb = sym_eigen(combinatorial_laplacian(k2));
    CHECK(comb.values(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(comb.values(1) == doctest::Approx(2.0).epsilon(1e-10));
    const auto norm = sym_eigen(normalized_laplacian(k2));
    CHECK(norm.values(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(norm.values(1) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("P3 combinatorial spectrum is {0, 1, 3}") {
    Graph p3(3, {{0, 1}, {1, 2}});
    const auto eig = sym_eigen(combinatorial_laplacian(p3));
    CHECK(eig.values(0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(eig.values(1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(eig.values(2) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("isolated nodes give identity rows in L_sym") {
    Graph g(3, {{0, 1}});
    const auto l = normalized_laplacian(g);
    CHECK(l(2, 2) == 1.0);
    CHECK(l(2, 0) == 0.0);
    CHECK(l(0, 2) == 0.0);
}

TEST_CASE("default cluster count rule") {
    CHECK(default_num_clusters(1) == 1);   // capped at n
    CHECK(default_num_clusters(2) == 2);
    CHECK(default_num_clusters(8) == 2);
    CHECK(default_num_clusters(18) == 3);
    CHECK(default_num_clusters(50) == 5);
    CHECK(default_num_clusters(200) == 10);
}

TEST_CASE("spectral partition recovers connected components exactly") {
    // Triangle + edge + isolated pair, k = number of components.
    Graph g(8, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {5, 6}, {6, 7}, {5, 7}});
    const auto p = spectral_partition(g, 3, 123);
    REQUIRE(p.num_groups() == 3);
    CHECK(p.group_of(0) == p.group_of(1));
    CHECK(p.group_of(1) == p.group_of(2));
    CHECK(p.group_of(3) == p.group_of(4));
    CHECK(p.group_of(5) == p.group_of(6));
    CHECK(p.group_of(6) == p.group_of(7));
    CHECK(p.group_of(0) != p.group_of(3));
    CHECK(p.group_of(0) != p.group_of(5));
    CHECK(p.group_of(3) != p.group_of(5));
}

TEST_CASE("two communities joined by a bridge split at the bridge") {
    const auto fx = fixtures::two_community_multigraph();
    const auto p = spectral_partition(fx.graph, 2, 7);
    CHECK(p == fx.target);
}

TEST_CASE("spectral partition is deterministic in the seed") {
    const auto fx = fixtures::two_community_multigraph();
    const auto a = spectral_partition(fx.graph, 2, 99);
    const auto b = spectral_partition(fx.graph, 2, 99);
    CHECK(a == b);
}

TEST_CASE("feature spectral clustering separates obvious blobs") {
    Matrix x(6, 2);
    x << 1, 0.01, 1, -0.02, 1, 0.0, -0.01, 1, 0.02, 1, 0.0, 1;
    for (auto aff : {Affinity::Cosine, Affinity::Rbf}) {
        const auto p = feature_spectral_partition(x, 2, 11, aff);
        REQUIRE(p.num_groups() == 2);
        CHECK(p.group_of(0) == p.group_of(1));
        CHECK(p.group_of(1) == p.group_of(2));
        CHECK(p.group_of(3) == p.group_of(4));
        CHECK(p.group_of(4) == p.group_of(5));
        CHECK(p.group_of(0) != p.group_of(3));
    }
}

TEST_CASE("laplacian PE: K2 sign-fixed Fiedler vector") {
    Graph k2(2, {{0, 1}});
    const auto pe = laplacian_pe(k2, 1);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(pe(0, 0) == doctest::Approx(s));
    CHECK(pe(1, 0) == doctest::Approx(-s));
}

TEST_CASE("laplacian PE zero-pads missing eigenvectors") {
    Graph k2(2, {{0, 1}});
    const auto pe = laplacian_pe(k2, 4);
    CHECK(pe.cols() == 4);
    for (int c = 1; c < 4; ++c) {
        CHECK(pe(0, c) == 0.0);
        CHECK(pe(1, c) == 0.0);
    }
}

TEST_CASE("random walk PE: C4 return probabilities") {
    Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    const auto pe = random_walk_pe(c4, 3);
    for (int v = 0; v < 4; ++v) {
        CHECK(pe(v, 0) == doctest::Approx(0.0));  // odd walks cannot return
        CHECK(pe(v, 1) == doctest::Approx(0.5));  // two of four 2-walks return
        CHECK(pe(v, 2) == doctest::Approx(0.0));
    }
}

TEST_CASE("random walk PE handles isolated nodes") {
    Graph g(2, {});
    const auto pe = random_walk_pe(g, 2);
    CHECK(pe.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kmeans recovers well-separated clusters") {
    std::mt19937 rng(31);
    std::normal_distribution<double> gauss(0.0, 0.05);
    Matrix pts(30, 2);
    for (int i = 0; i < 30; ++i) {
        const int c = i % 3;
        pts(i, 0) = (c == 0 ? 0.0 : c == 1 ? 10.0 : 0.0) + gauss(rng);
        pts(i, 1) = (c == 2 ? 10.0 : 0.0) + gauss(rng);
    }
    const auto labels = kmeans(pts, 3, 5);
    for (int i = 0; i < 30; ++i) CHECK(labels[i] == labels[i % 3]);
    CHECK(labels[0] != labels[1]);
    CHECK(labels[1] != labels[2]);
    CHECK(labels[0] != labels[2]);
}

TEST_CASE("cluster count bounds are enforced") {
    Graph k2(2, {{0, 1}});
    CHECK_THROWS_AS(spectral_partition(k2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(spectral_partition(k2, 3, 1), std::invalid_argument);
}
