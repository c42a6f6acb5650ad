#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "poolq/core.hpp"

#include <random>

using namespace poolq;

TEST_CASE("graph stores multiedges and self-loops with multiplicity") {
    Graph g(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}});
    CHECK(g.num_nodes() == 3);
    CHECK(g.degree(0) == 2);
    CHECK(g.degree(1) == 3);
    CHECK(g.degree(2) == 2);  // one neighbour edge + loop once

    const auto a = g.adjacency_matrix();
    CHECK(a(0, 1) == 2);
    CHECK(a(1, 0) == 2);
    CHECK(a(1, 2) == 1);
    CHECK(a(2, 2) == 1);
    CHECK(a(0, 0) == 0);
}

TEST_CASE("graph rejects out-of-range endpoints") {
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{-1, 0}}), std::invalid_argument);
}

TEST_CASE("canonicalize relabels by first appearance") {
    const auto c = canonicalize_colouring(std::vector<int>{7, 3, 7, 9, 3});
    CHECK(c.colours == std::vector<int>{0, 1, 0, 2, 1});
    CHECK(c.num_colours == 3);

    // Idempotence: canonical input maps to itself.
    const auto c2 = canonicalize_colouring(c.colours);
    CHECK(c2.colours == c.colours);
    CHECK(c2.num_colours == c.num_colours);
}

TEST_CASE("canonicalize is invariant to injective relabelling") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 12);
        std::vector<long long> raw(n);
        for (auto& v : raw) v = static_cast<long long>(rng() % 6);
        const auto base = canonicalize_colouring(raw);
        // Apply an injective map (affine over a big modulus keeps injectivity
        // on this small range).
        std::vector<long long> mapped(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) mapped[i] = raw[i] * 1000003 + 17;
        const auto remapped = canonicalize_colouring(mapped);
        CHECK(base.colours == remapped.colours);
    }
}

TEST_CASE("canonicalize rejects empty input") {
    CHECK_THROWS_AS(canonicalize_colouring(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("colour classes partition the nodes") {
    Colouring c{{0, 1, 0, 2, 1}, 3};
    const auto classes = c.colour_classes();
    REQUIRE(classes.size() == 3);
    CHECK(classes[0] == std::vector<int>{0, 2});
    CHECK(classes[1] == std::vector<int>{1, 4});
    CHECK(classes[2] == std::vector<int>{3});
}

TEST_CASE("partition basics and assignment round-trip") {
    Partition p({{0, 2}, {1}, {3, 4}});
    CHECK(p.num_groups() == 3);
    CHECK(p.num_nodes() == 5);
    CHECK(p.group_of(2) == 0);
    CHECK(p.group_of(4) == 2);

    const auto s = p.assignment();
    CHECK(s.rows() == 5);
    CHECK(s.cols() == 3);
    CHECK(s.sum() == 5.0);

    bool dropped = false;
    const auto back = partition_from_assignment(s, &dropped);
    CHECK(back == p);
    CHECK_FALSE(dropped);
}

TEST_CASE("assignment with empty column drops it and reports") {
    Matrix s = Matrix::Zero(3, 3);
    s(0, 0) = s(1, 0) = s(2, 2) = 1.0;
    bool dropped = false;
    const auto p = partition_from_assignment(s, &dropped);
    CHECK(dropped);
    CHECK(p.num_groups() == 2);
}

TEST_CASE("assignment must be a hard partition") {
    Matrix two = Matrix::Zero(2, 2);
    two(0, 0) = two(0, 1) = two(1, 1) = 1.0;  // node 0 in two groups
    CHECK_THROWS_AS(partition_from_assignment(two), std::invalid_argument);

    Matrix frac = Matrix::Zero(2, 2);
    frac(0, 0) = 0.5;
    frac(0, 1) = 0.5;
    frac(1, 1) = 1.0;
    CHECK_THROWS_AS(partition_from_assignment(frac), std::invalid_argument);
}

TEST_CASE("partition rejects overlaps and gaps") {
    CHECK_THROWS_AS(Partition({{0, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({{0}, {2}}), std::invalid_argument);
    CHECK_THROWS_AS(Partition({{0}, {}}), std::invalid_argument);
}

TEST_CASE("transfer variant string round-trip") {
    for (auto v : {TransferVariant::Full, TransferVariant::Ratio,
                   TransferVariant::Group})
        CHECK(transfer_variant_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(transfer_variant_from_string("nope"), std::invalid_argument);
}
