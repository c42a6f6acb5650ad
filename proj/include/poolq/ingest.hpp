#pragma once

#include "poolq/core.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace poolq {

/// One TUDataset-style dataset in memory.
struct DatasetBundle {
    std::string name;
    std::vector<Graph> graphs;
    std::optional<std::vector<int>> graph_labels;
    /// Per-graph colourings derived from discrete node labels, when the
    /// dataset ships `_node_labels.txt`. Colour ids are the raw label
    /// values relabelled over the whole dataset, so they are shared
    /// across graphs.
    std::optional<std::vector<Colouring>> node_label_colourings;
};

struct DatasetSplit {
    std::vector<int> seen;    // graph indices
    std::vector<int> unseen;
};

/// Parse `<name>_A.txt`, `<name>_graph_indicator.txt` and the optional
/// label/attribute files from `dir`. Edge lists are 1-based and list each
/// undirected edge in both directions; both directions collapse to one
/// edge, genuine repeats beyond the symmetric duplicate stay multiedges.
/// Node labels become one-hot features when `_node_attributes.txt` is
/// absent; otherwise attributes are the feature matrix and labels are kept
/// as colourings.
DatasetBundle load_tudataset(const std::filesystem::path& dir,
                             const std::string& name);

/// Deterministic shuffled seen/unseen split. |seen| = round(fraction * |G|).
DatasetSplit split_seen_unseen(const DatasetBundle& bundle, double fraction,
                               unsigned long long seed);

}  // namespace poolq
