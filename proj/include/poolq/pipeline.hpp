#pragma once

#include "poolq/core.hpp"
#include "poolq/ingest.hpp"
#include "poolq/spectral.hpp"

#include <functional>
#include <string>
#include <vector>

namespace poolq {

enum class FeatureSource { Empirical, Same, Mixed, Distinct, LapPe, RwPe };

std::string to_string(FeatureSource s);
FeatureSource feature_source_from_string(const std::string& s);

/// Continuous sources go through the tau sweep; discrete ones are scored at
/// their given colours. Empirical counts as continuous only when the run is
/// configured to read attributes instead of labels.
bool needs_tau_sweep(FeatureSource s, bool empirical_from_attributes);

struct RunConfig {
    double split_fraction = 0.8;
    unsigned long long seed = 7;
    int clusters = 0;  // 0: per-graph default_num_clusters(n)
    Affinity affinity = Affinity::Cosine;
    int pe_dim = 8;
    std::vector<double> tau_grid;  // empty: default_tau_grid()
    TransferVariant variant = TransferVariant::Full;
    int threads = 0;  // 0: hardware concurrency
    bool empirical_from_attributes = false;
};

/// One (feature source, refinement depth) cell of a results table.
struct CellResult {
    FeatureSource source = FeatureSource::Empirical;
    int cr_rounds = 0;
    double gamma_bar = 0.0;
    double lambda_bar = 0.0;
    double q_bar = 0.0;
    double tau = -1.0;      // optimized threshold; -1 for discrete sources
    double k_over_n = 0.0;  // mean colour ratio before refinement
};

/// 0.00, 0.01, ..., 1.00.
std::vector<double> default_tau_grid();

/// Per-graph seed stream: decorrelated but reproducible across runs.
unsigned long long graph_seed(unsigned long long base, int graph_index);

/// Run fn(0..n-1) on a pool of worker threads. Callers must write results
/// by index so the outcome is independent of scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

/// Spectral reference partition of every graph, in parallel.
std::vector<Partition> reference_partitions(const DatasetBundle& bundle,
                                            const RunConfig& cfg);

/// Per-graph feature matrices for a continuous source (positional encodings
/// or raw attributes), in parallel.
std::vector<Matrix> continuous_features(const DatasetBundle& bundle,
                                        FeatureSource source,
                                        const RunConfig& cfg);

/// Shared-alphabet discrete colourings for a discrete source.
std::vector<Colouring> discrete_colourings(const DatasetBundle& bundle,
                                           FeatureSource source,
                                           const RunConfig& cfg);

/// Score one cell: discrete sources directly, continuous ones through the
/// tau sweep (tau and k/N then refer to the optimum).
CellResult evaluate_cell(const DatasetBundle& bundle,
                         const std::vector<Partition>& partitions,
                         const DatasetSplit& split, FeatureSource source,
                         int cr_rounds, const RunConfig& cfg);

}  // namespace poolq
