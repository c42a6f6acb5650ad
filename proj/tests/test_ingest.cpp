#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "poolq/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>

using namespace poolq;
namespace fs = std::filesystem;

namespace {

struct TempDataset {
    fs::path dir;

    explicit TempDataset(const std::string& name) {
        dir = fs::temp_directory_path() / ("poolq-test-" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempDataset() { fs::remove_all(dir); }

    void file(const std::string& suffix, const std::string& content) const {
        std::ofstream out(dir / ("toy" + suffix));
        out << content;
    }
};

// Two graphs: a triangle (nodes 1..3) and an edge (nodes 4..5), with the
// usual doubled directed edge list.
void write_toy(const TempDataset& t) {
    t.file("_graph_indicator.txt", "1\n1\n1\n2\n2\n");
    t.file("_A.txt", "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n4, 5\n5, 4\n");
}

}  // namespace

TEST_CASE("basic parse: graphs, sizes, collapsed edges") {
    TempDataset t("basic");
    write_toy(t);
    const auto b = load_tudataset(t.dir, "toy");
    REQUIRE(b.graphs.size() == 2);
    CHECK(b.graphs[0].num_nodes() == 3);
    CHECK(b.graphs[1].num_nodes() == 2);
    CHECK(b.graphs[0].edges().size() == 3);  // triangle, not 6 directed arcs
    CHECK(b.graphs[1].edges().size() == 1);
    CHECK_FALSE(b.graphs[0].has_features());
    CHECK_FALSE(b.node_label_colourings.has_value());
    CHECK_FALSE(b.graph_labels.has_value());
}

TEST_CASE("node labels become shared colour ids and one-hot features") {
    TempDataset t("labels");
    write_toy(t);
    t.file("_node_labels.txt", "7\n7\n3\n3\n7\n");
    t.file("_graph_labels.txt", "1\n-1\n");
    const auto b = load_tudataset(t.dir, "toy");

    REQUIRE(b.node_label_colourings.has_value());
    const auto& cols = *b.node_label_colourings;
    CHECK(cols[0].colours == std::vector<int>{0, 0, 1});
    CHECK(cols[1].colours == std::vector<int>{1, 0});  // same alphabet
    CHECK(cols[0].num_colours == 2);
    CHECK(cols[1].num_colours == 2);

    REQUIRE(b.graphs[0].has_features());
    CHECK(b.graphs[0].features().cols() == 2);
    CHECK(b.graphs[0].features()(0, 0) == 1.0);
    CHECK(b.graphs[0].features()(2, 1) == 1.0);
    CHECK(b.graphs[1].features()(0, 1) == 1.0);

    REQUIRE(b.graph_labels.has_value());
    CHECK(*b.graph_labels == std::vector<int>{1, -1});
}

TEST_CASE("attributes win over labels as the feature matrix") {
    TempDataset t("attrs");
    write_toy(t);
    t.file("_node_labels.txt", "1\n1\n2\n2\n1\n");
    t.file("_node_attributes.txt", "0.5, 1.5\n1, 2\n3 4\n5,6\n7, 8\n");
    const auto b = load_tudataset(t.dir, "toy");
    REQUIRE(b.graphs[0].has_features());
    CHECK(b.graphs[0].features().cols() == 2);
    CHECK(b.graphs[0].features()(0, 1) == 1.5);
    CHECK(b.graphs[0].features()(2, 0) == 3.0);
    CHECK(b.node_label_colourings.has_value());  // labels kept as colours
}

TEST_CASE("a repeated directed pair beyond the symmetric double is a multiedge") {
    TempDataset t("multi");
    t.file("_graph_indicator.txt", "1\n1\n");
    // (1,2) listed four times in total: multiplicity ceil(4/2) = 2.
    t.file("_A.txt", "1 2\n2 1\n1 2\n2 1\n");
    const auto b = load_tudataset(t.dir, "toy");
    CHECK(b.graphs[0].edges().size() == 2);
}

TEST_CASE("loading is deterministic") {
    TempDataset t("det");
    write_toy(t);
    t.file("_node_labels.txt", "7\n7\n3\n3\n7\n");
    const auto a = load_tudataset(t.dir, "toy");
    const auto b = load_tudataset(t.dir, "toy");
    CHECK(a.graphs[0].edges() == b.graphs[0].edges());
    CHECK(a.node_label_colourings->at(0).colours ==
          b.node_label_colourings->at(0).colours);
}

TEST_CASE("cross-graph edge is rejected with the offending line") {
    TempDataset t("cross");
    t.file("_graph_indicator.txt", "1\n1\n2\n");
    t.file("_A.txt", "1 2\n2 1\n2 3\n");
    CHECK_THROWS_WITH_AS(load_tudataset(t.dir, "toy"),
                         doctest::Contains(":3"), std::runtime_error);
}

TEST_CASE("malformed files are rejected") {
    TempDataset t("bad");
    t.file("_graph_indicator.txt", "1\nx\n");
    t.file("_A.txt", "");
    CHECK_THROWS_AS(load_tudataset(t.dir, "toy"), std::runtime_error);

    TempDataset t2("bad2");
    write_toy(t2);
    t2.file("_node_labels.txt", "1\n2\n");  // wrong count
    CHECK_THROWS_AS(load_tudataset(t2.dir, "toy"), std::runtime_error);

    TempDataset t3("bad3");
    CHECK_THROWS_AS(load_tudataset(t3.dir, "toy"), std::runtime_error);
}

TEST_CASE("split is a disjoint cover with the requested sizes") {
    TempDataset t("split");
    write_toy(t);
    auto b = load_tudataset(t.dir, "toy");
    // Replicate to 10 graphs for a meaningful split.
    while (b.graphs.size() < 10) b.graphs.push_back(b.graphs[0]);

    const auto s = split_seen_unseen(b, 0.8, 42);
    CHECK(s.seen.size() == 8);
    CHECK(s.unseen.size() == 2);
    std::vector<int> all = s.seen;
    all.insert(all.end(), s.unseen.begin(), s.unseen.end());
    std::sort(all.begin(), all.end());
    for (int i = 0; i < 10; ++i) CHECK(all[i] == i);

    // Deterministic in the seed; different seeds shuffle differently.
    const auto s2 = split_seen_unseen(b, 0.8, 42);
    CHECK(s2.seen == s.seen);
    bool any_diff = false;
    for (unsigned long long seed = 0; seed < 10 && !any_diff; ++seed)
        any_diff = split_seen_unseen(b, 0.8, seed).seen != s.seen;
    CHECK(any_diff);
}

TEST_CASE("degenerate splits are rejected") {
    TempDataset t("splitbad");
    write_toy(t);
    const auto b = load_tudataset(t.dir, "toy");
    CHECK_THROWS_AS(split_seen_unseen(b, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_seen_unseen(b, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_seen_unseen(b, 0.99, 1), std::invalid_argument);
}
