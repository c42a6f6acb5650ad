#include "poolq/pipeline.hpp"

#include "poolq/featuregen.hpp"
#include "poolq/quality.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace poolq {

std::string to_string(FeatureSource s) {
    switch (s) {
        case FeatureSource::Empirical: return "empirical";
        case FeatureSource::Same: return "same";
        case FeatureSource::Mixed: return "mixed";
        case FeatureSource::Distinct: return "distinct";
        case FeatureSource::LapPe: return "lap-pe";
        case FeatureSource::RwPe: return "rw-pe";
    }
    return "empirical";
}

FeatureSource feature_source_from_string(const std::string& s) {
    if (s == "empirical") return FeatureSource::Empirical;
    if (s == "same") return FeatureSource::Same;
    if (s == "mixed") return FeatureSource::Mixed;
    if (s == "distinct") return FeatureSource::Distinct;
    if (s == "lap-pe") return FeatureSource::LapPe;
    if (s == "rw-pe") return FeatureSource::RwPe;
    throw std::invalid_argument("unknown feature source: " + s);
}

bool needs_tau_sweep(FeatureSource s, bool empirical_from_attributes) {
    switch (s) {
        case FeatureSource::LapPe:
        case FeatureSource::RwPe:
            return true;
        case FeatureSource::Empirical:
            return empirical_from_attributes;
        default:
            return false;
    }
}

std::vector<double> default_tau_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
    return grid;
}

unsigned long long graph_seed(unsigned long long base, int graph_index) {
    // splitmix64 step over base + index keeps per-graph streams apart even
    // for consecutive base seeds.
    unsigned long long z = base + 0x9e3779b97f4a7c15ULL *
                                      (static_cast<unsigned long long>(graph_index) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }
    threads = std::min(threads, std::max(n, 1));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<Partition> reference_partitions(const DatasetBundle& bundle,
                                            const RunConfig& cfg) {
    const int n = static_cast<int>(bundle.graphs.size());
    std::vector<Partition> parts(n, Partition(std::vector<std::vector<int>>{{0}}));
    parallel_for(n, cfg.threads, [&](int g) {
        const auto& graph = bundle.graphs[g];
        const int k = cfg.clusters > 0
                          ? std::min(cfg.clusters, graph.num_nodes())
                          : default_num_clusters(graph.num_nodes());
        parts[g] = spectral_partition(graph, k, graph_seed(cfg.seed, g));
    });
    return parts;
}

std::vector<Matrix> continuous_features(const DatasetBundle& bundle,
                                        FeatureSource source,
                                        const RunConfig& cfg) {
    const int n = static_cast<int>(bundle.graphs.size());
    std::vector<Matrix> feats(n);
    parallel_for(n, cfg.threads, [&](int g) {
        const auto& graph = bundle.graphs[g];
        switch (source) {
            case FeatureSource::LapPe:
                feats[g] = laplacian_pe(graph, cfg.pe_dim);
                break;
            case FeatureSource::RwPe:
                feats[g] = random_walk_pe(graph, cfg.pe_dim);
                break;
            case FeatureSource::Empirical:
                if (!graph.has_features())
                    throw std::runtime_error("dataset has no node attributes");
                feats[g] = graph.features();
                break;
            default:
                throw std::invalid_argument("not a continuous feature source");
        }
    });
    return feats;
}

std::vector<Colouring> discrete_colourings(const DatasetBundle& bundle,
                                           FeatureSource source,
                                           const RunConfig& cfg) {
    const int n = static_cast<int>(bundle.graphs.size());
    std::vector<Colouring> colours(n);
    switch (source) {
        case FeatureSource::Empirical:
            if (!bundle.node_label_colourings)
                throw std::runtime_error("dataset has no node labels");
            return *bundle.node_label_colourings;
        case FeatureSource::Same:
        case FeatureSource::Mixed:
        case FeatureSource::Distinct: {
            const auto mode = source == FeatureSource::Same
                                  ? RandomFeatureMode::Same
                                  : source == FeatureSource::Mixed
                                        ? RandomFeatureMode::Mixed
                                        : RandomFeatureMode::Distinct;
            for (int g = 0; g < n; ++g)
                colours[g] = random_feature_colouring(bundle.graphs[g], mode,
                                                      graph_seed(cfg.seed, g));
            return colours;
        }
        default:
            throw std::invalid_argument("not a discrete feature source");
    }
}

CellResult evaluate_cell(const DatasetBundle& bundle,
                         const std::vector<Partition>& partitions,
                         const DatasetSplit& split, FeatureSource source,
                         int cr_rounds, const RunConfig& cfg) {
    std::vector<const Graph*> graphs;
    graphs.reserve(bundle.graphs.size());
    for (const auto& g : bundle.graphs) graphs.push_back(&g);

    CellResult cell;
    cell.source = source;
    cell.cr_rounds = cr_rounds;

    if (needs_tau_sweep(source, cfg.empirical_from_attributes)) {
        const auto feats = continuous_features(bundle, source, cfg);
        const auto grid = cfg.tau_grid.empty() ? default_tau_grid() : cfg.tau_grid;
        const auto sweep = sweep_tau(graphs, feats, partitions, split.seen,
                                     split.unseen, cr_rounds, grid, cfg.variant);
        for (const auto& point : sweep.curve) {
            if (point.tau == sweep.tau_star) {
                cell.gamma_bar = point.gamma_bar;
                cell.lambda_bar = point.lambda_bar;
                break;
            }
        }
        cell.q_bar = sweep.q_star;
        cell.tau = sweep.tau_star;
        cell.k_over_n = sweep.k_over_n_star;
        return cell;
    }

    const auto colours = discrete_colourings(bundle, source, cfg);
    const auto point = score_colourings(graphs, colours, partitions, split.seen,
                                        split.unseen, cr_rounds, cfg.variant);
    cell.gamma_bar = point.gamma_bar;
    cell.lambda_bar = point.lambda_bar;
    cell.q_bar = point.q_bar;
    cell.k_over_n = point.k_over_n;
    return cell;
}

}  // namespace poolq
