#include "poolq/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace poolq {
namespace {

std::vector<std::string> read_lines(const std::filesystem::path& file,
                                    bool mandatory) {
    std::ifstream in(file);
    if (!in) {
        if (mandatory)
            throw std::runtime_error("missing dataset file: " + file.string());
        return {};
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

// Whitespace/comma tolerant tokenizer; TUDataset files vary in delimiter.
std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

long long parse_int(const std::string& tok, const std::string& file, size_t lineno) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size())
        throw std::runtime_error(file + ":" + std::to_string(lineno) +
                                 ": non-integer token '" + tok + "'");
    return v;
}

double parse_real(const std::string& tok, const std::string& file, size_t lineno) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.size())
        throw std::runtime_error(file + ":" + std::to_string(lineno) +
                                 ": non-numeric token '" + tok + "'");
    return v;
}

}  // namespace

DatasetBundle load_tudataset(const std::filesystem::path& dir,
                             const std::string& name) {
    const auto path = [&](const std::string& suffix) {
        return dir / (name + suffix);
    };

    const auto indicator_lines = read_lines(path("_graph_indicator.txt"), true);
    const int total_nodes = static_cast<int>(indicator_lines.size());
    if (total_nodes == 0)
        throw std::runtime_error("empty graph indicator file");

    std::vector<int> graph_of(total_nodes);   // 0-based graph id per node
    std::vector<int> local_id(total_nodes);   // node index within its graph
    std::vector<int> graph_sizes;
    for (int i = 0; i < total_nodes; ++i) {
        const auto toks = tokens(indicator_lines[i]);
        if (toks.size() != 1)
            throw std::runtime_error("graph indicator line " +
                                     std::to_string(i + 1) + " malformed");
        const int gid = static_cast<int>(
            parse_int(toks[0], name + "_graph_indicator.txt", i + 1)) - 1;
        if (gid < 0 || gid < static_cast<int>(graph_sizes.size()) - 1)
            throw std::runtime_error("graph indicator ids must be 1-based and grouped");
        while (static_cast<int>(graph_sizes.size()) <= gid) graph_sizes.push_back(0);
        graph_of[i] = gid;
        local_id[i] = graph_sizes[gid]++;
    }
    const int num_graphs = static_cast<int>(graph_sizes.size());

    // Collapse the doubled directed edge list into undirected multiplicities.
    std::vector<std::map<std::pair<int, int>, int>> dir_counts(num_graphs);
    const auto edge_lines = read_lines(path("_A.txt"), true);
    for (size_t i = 0; i < edge_lines.size(); ++i) {
        if (edge_lines[i].empty()) continue;
        const auto toks = tokens(edge_lines[i]);
        if (toks.size() != 2)
            throw std::runtime_error(name + "_A.txt:" + std::to_string(i + 1) +
                                     ": expected two endpoints");
        const int a = static_cast<int>(parse_int(toks[0], name + "_A.txt", i + 1)) - 1;
        const int b = static_cast<int>(parse_int(toks[1], name + "_A.txt", i + 1)) - 1;
        if (a < 0 || a >= total_nodes || b < 0 || b >= total_nodes)
            throw std::runtime_error(name + "_A.txt:" + std::to_string(i + 1) +
                                     ": node id out of range");
        if (graph_of[a] != graph_of[b])
            throw std::runtime_error(name + "_A.txt:" + std::to_string(i + 1) +
                                     ": edge crosses graphs " +
                                     std::to_string(graph_of[a] + 1) + " and " +
                                     std::to_string(graph_of[b] + 1));
        auto key = std::minmax(local_id[a], local_id[b]);
        dir_counts[graph_of[a]][{key.first, key.second}] += 1;
    }

    std::vector<std::vector<Edge>> edges(num_graphs);
    for (int g = 0; g < num_graphs; ++g)
        for (const auto& [e, count] : dir_counts[g])
            for (int m = 0; m < (count + 1) / 2; ++m) edges[g].push_back(e);

    // Node labels, relabelled over the whole dataset so colour ids are shared.
    std::optional<std::vector<Colouring>> label_colourings;
    std::vector<int> label_ids;
    int alphabet = 0;
    const auto label_lines = read_lines(path("_node_labels.txt"), false);
    if (!label_lines.empty()) {
        if (static_cast<int>(label_lines.size()) != total_nodes)
            throw std::runtime_error("node label count does not match node count");
        std::map<long long, int> ids;
        for (size_t i = 0; i < label_lines.size(); ++i) {
            const auto toks = tokens(label_lines[i]);
            if (toks.size() != 1)
                throw std::runtime_error(name + "_node_labels.txt:" +
                                         std::to_string(i + 1) + ": malformed");
            const long long raw = parse_int(toks[0], name + "_node_labels.txt", i + 1);
            auto [it, ins] = ids.emplace(raw, static_cast<int>(ids.size()));
            label_ids.push_back(it->second);
        }
        alphabet = static_cast<int>(ids.size());
        label_colourings.emplace();
        for (int g = 0; g < num_graphs; ++g) {
            Colouring c;
            c.colours.resize(graph_sizes[g]);
            c.num_colours = alphabet;
            label_colourings->push_back(std::move(c));
        }
        for (int i = 0; i < total_nodes; ++i)
            (*label_colourings)[graph_of[i]].colours[local_id[i]] = label_ids[i];
    }

    // Attributes win as the feature matrix when both files exist.
    std::optional<std::vector<Matrix>> features;
    const auto attr_lines = read_lines(path("_node_attributes.txt"), false);
    if (!attr_lines.empty()) {
        if (static_cast<int>(attr_lines.size()) != total_nodes)
            throw std::runtime_error("node attribute count does not match node count");
        std::vector<std::vector<double>> rows(total_nodes);
        size_t dim = 0;
        for (size_t i = 0; i < attr_lines.size(); ++i) {
            for (const auto& t : tokens(attr_lines[i]))
                rows[i].push_back(parse_real(t, name + "_node_attributes.txt", i + 1));
            if (i == 0) dim = rows[i].size();
            if (rows[i].size() != dim)
                throw std::runtime_error("inconsistent attribute dimension at line " +
                                         std::to_string(i + 1));
        }
        features.emplace();
        for (int g = 0; g < num_graphs; ++g)
            features->push_back(Matrix::Zero(graph_sizes[g], dim));
        for (int i = 0; i < total_nodes; ++i)
            for (size_t j = 0; j < dim; ++j)
                (*features)[graph_of[i]](local_id[i], static_cast<int>(j)) = rows[i][j];
    } else if (!label_ids.empty()) {
        // Empirical one-hot features from the label alphabet.
        features.emplace();
        for (int g = 0; g < num_graphs; ++g)
            features->push_back(Matrix::Zero(graph_sizes[g], alphabet));
        for (int i = 0; i < total_nodes; ++i)
            (*features)[graph_of[i]](local_id[i], label_ids[i]) = 1.0;
    }

    DatasetBundle bundle;
    bundle.name = name;
    for (int g = 0; g < num_graphs; ++g) {
        std::optional<Matrix> x;
        if (features) x = std::move((*features)[g]);
        bundle.graphs.emplace_back(graph_sizes[g], std::move(edges[g]), std::move(x));
    }
    bundle.node_label_colourings = std::move(label_colourings);

    const auto gl_lines = read_lines(path("_graph_labels.txt"), false);
    if (!gl_lines.empty()) {
        if (static_cast<int>(gl_lines.size()) != num_graphs)
            throw std::runtime_error("graph label count does not match graph count");
        std::vector<int> gl;
        for (size_t i = 0; i < gl_lines.size(); ++i)
            gl.push_back(static_cast<int>(
                parse_int(tokens(gl_lines[i]).at(0), name + "_graph_labels.txt", i + 1)));
        bundle.graph_labels = std::move(gl);
    }
    return bundle;
}

DatasetSplit split_seen_unseen(const DatasetBundle& bundle, double fraction,
                               unsigned long long seed) {
    const int n = static_cast<int>(bundle.graphs.size());
    if (n < 2) throw std::invalid_argument("need at least two graphs to split");
    if (fraction <= 0.0 || fraction >= 1.0)
        throw std::invalid_argument("split fraction must be in (0, 1)");
    const int n_seen = static_cast<int>(std::llround(fraction * n));
    if (n_seen < 1 || n_seen >= n)
        throw std::invalid_argument("split would leave seen or unseen empty");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    DatasetSplit split;
    split.seen.assign(order.begin(), order.begin() + n_seen);
    split.unseen.assign(order.begin() + n_seen, order.end());
    return split;
}

}  // namespace poolq
