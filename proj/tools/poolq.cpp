// poolq: feature/topology alignment diagnostics for graph pooling.
//
// Subcommands: quality, curves, nmi, refine-dump, feasibility.
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include "poolq/alignment.hpp"
#include "poolq/discretize.hpp"
#include "poolq/featuregen.hpp"
#include "poolq/fixtures.hpp"
#include "poolq/ingest.hpp"
#include "poolq/pipeline.hpp"
#include "poolq/quality.hpp"
#include "poolq/refine.hpp"
#include "poolq/select.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace poolq;

namespace {

struct CommonOpts {
    std::string dataset;
    std::string name = "MUTAG";
    std::string out = "out";
    std::string clusters = "auto";
    std::string affinity = "cosine";
    std::string variant = "full";
    double split = 0.8;
    unsigned long long seed = 7;
    int threads = 0;
    int pe_dim = 8;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--dataset", o.dataset,
                    "Dataset directory (fallback: $POOLQ_DATA)");
    cmd->add_option("--name", o.name, "Dataset name (subdirectory + file prefix)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--clusters", o.clusters,
                    "Reference cluster count: 'auto' or a positive integer");
    cmd->add_option("--affinity", o.affinity, "Feature affinity: cosine|rbf");
    cmd->add_option("--variant", o.variant,
                    "Transferability variant: full|ratio|group");
    cmd->add_option("--split", o.split, "Seen fraction of the graphs");
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--threads", o.threads,
                    "Worker threads (0: all available; results do not depend on this)");
    cmd->add_option("--pe-dim", o.pe_dim, "Positional-encoding dimension");
}

std::string resolve_dataset_dir(const CommonOpts& o) {
    std::string dir = o.dataset;
    if (dir.empty()) {
        if (const char* env = std::getenv("POOLQ_DATA")) dir = env;
    }
    if (dir.empty())
        throw std::invalid_argument("no dataset directory: pass --dataset or set POOLQ_DATA");
    if (!fs::is_directory(dir))
        throw std::invalid_argument("dataset directory not found: " + dir);
    // Accept both the dataset directory itself and its parent.
    if (fs::is_directory(fs::path(dir) / o.name))
        return (fs::path(dir) / o.name).string();
    return dir;
}

int parse_clusters(const std::string& s) {
    if (s == "auto") return 0;
    try {
        const int k = std::stoi(s);
        if (k >= 1) return k;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("--clusters must be 'auto' or a positive integer");
}

int parse_cr(const std::string& s) {
    if (s == "inf") return kRefineUntilStable;
    try {
        const int r = std::stoi(s);
        if (r >= 0) return r;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("--cr must be a non-negative integer, 'inf' or 'all'");
}

std::string cr_label(int cr) {
    return cr == kRefineUntilStable ? "inf" : std::to_string(cr);
}

/// "a:b:c" -> {a, a+b, ..., <= c}; plain number -> single point.
std::vector<double> parse_tau_grid(const std::string& s) {
    std::vector<double> grid;
    const auto c1 = s.find(':');
    if (c1 == std::string::npos) {
        grid.push_back(std::stod(s));
        return grid;
    }
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("--tau-grid expects start:step:stop");
    const double start = std::stod(s.substr(0, c1));
    const double step = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    const double stop = std::stod(s.substr(c2 + 1));
    if (step <= 0) throw std::invalid_argument("--tau-grid step must be positive");
    for (double t = start; t <= stop + 1e-9; t += step)
        grid.push_back(std::min(t, stop));
    return grid;
}

RunConfig make_run_config(const CommonOpts& o) {
    RunConfig cfg;
    cfg.split_fraction = o.split;
    cfg.seed = o.seed;
    cfg.clusters = parse_clusters(o.clusters);
    cfg.affinity = affinity_from_string(o.affinity);
    cfg.pe_dim = o.pe_dim;
    cfg.variant = transfer_variant_from_string(o.variant);
    cfg.threads = o.threads;
    return cfg;
}

/// Resolved configuration block shared by every report. --threads is not
/// included: it never changes results, so reports stay byte-identical
/// across worker counts.
json config_json(const CommonOpts& o, const RunConfig& cfg,
                 const std::string& dir) {
    json j;
    j["dataset_dir"] = dir;
    j["dataset"] = o.name;
    j["clusters"] = cfg.clusters == 0 ? json("auto (max(2, round(sqrt(n/2))))")
                                      : json(cfg.clusters);
    j["affinity"] = to_string(cfg.affinity);
    j["variant"] = to_string(cfg.variant);
    j["split_fraction"] = cfg.split_fraction;
    j["seed"] = cfg.seed;
    j["pe_dim"] = cfg.pe_dim;
    j["nmi_normalization"] = "sqrt";
    return j;
}

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// ---------------------------------------------------------------- quality

int cmd_quality(const CommonOpts& o, const std::string& features,
                const std::string& cr, const std::string& tau_grid_arg) {
    const auto dir = resolve_dataset_dir(o);
    auto cfg = make_run_config(o);
    if (!tau_grid_arg.empty()) cfg.tau_grid = parse_tau_grid(tau_grid_arg);

    std::vector<FeatureSource> sources;
    if (features == "all") {
        sources = {FeatureSource::Empirical, FeatureSource::Same,
                   FeatureSource::Mixed,     FeatureSource::Distinct,
                   FeatureSource::LapPe,     FeatureSource::RwPe};
    } else {
        sources = {feature_source_from_string(features)};
    }
    std::vector<int> crs;
    if (cr == "all") {
        crs = {0, 1, 2, 3, kRefineUntilStable};
    } else {
        crs = {parse_cr(cr)};
    }

    const auto bundle = load_tudataset(dir, o.name);
    const auto split = split_seen_unseen(bundle, cfg.split_fraction, cfg.seed);
    const auto partitions = reference_partitions(bundle, cfg);

    json report;
    report["config"] = config_json(o, cfg, dir);
    report["config"]["tau_grid"] =
        cfg.tau_grid.empty() ? default_tau_grid() : cfg.tau_grid;
    report["config"]["feature_sources"] = json::array();
    for (auto s : sources) report["config"]["feature_sources"].push_back(to_string(s));
    report["config"]["cr_rounds"] = json::array();
    for (int r : crs) report["config"]["cr_rounds"].push_back(cr_label(r));
    report["num_graphs"] = bundle.graphs.size();
    report["num_seen"] = split.seen.size();
    report["num_unseen"] = split.unseen.size();

    std::vector<std::vector<CellResult>> table;
    report["cells"] = json::array();
    for (auto s : sources) {
        table.emplace_back();
        for (int r : crs) {
            const auto cell = evaluate_cell(bundle, partitions, split, s, r, cfg);
            table.back().push_back(cell);
            json jc;
            jc["features"] = to_string(s);
            jc["cr"] = cr_label(r);
            jc["gamma_bar"] = cell.gamma_bar;
            jc["lambda_bar"] = cell.lambda_bar;
            jc["q_bar"] = cell.q_bar;
            jc["k_over_n"] = cell.k_over_n;
            if (cell.tau >= 0) jc["tau"] = cell.tau;
            report["cells"].push_back(std::move(jc));
        }
    }

    // CSV mirrors the JSON one row per feature source, one column block per
    // refinement depth. NMI columns are reported by `nmi`, not here.
    std::string csv = "features";
    for (int r : crs) {
        const auto l = cr_label(r);
        csv += ",q_cr" + l + ",nmi_cr" + l + ",tau_cr" + l + ",kn_cr" + l;
    }
    csv += "\n";
    for (size_t i = 0; i < sources.size(); ++i) {
        csv += to_string(sources[i]);
        for (const auto& cell : table[i]) {
            csv += "," + fmt(cell.q_bar) + ",";
            csv += "," + (cell.tau >= 0 ? fmt(cell.tau) : std::string());
            csv += "," + fmt(cell.k_over_n);
        }
        csv += "\n";
    }

    const std::string stem = o.name + "-" + features + "-" + to_string(cfg.variant);
    write_text(fs::path(o.out) / (stem + ".json"), report.dump(2) + "\n");
    write_text(fs::path(o.out) / (stem + ".csv"), csv);
    std::cout << "wrote " << (fs::path(o.out) / (stem + ".json")).string() << " and .csv\n";
    return 0;
}

// ----------------------------------------------------------------- curves

int cmd_curves(const CommonOpts& o, const std::string& tau_grid_arg) {
    const auto dir = resolve_dataset_dir(o);
    auto cfg = make_run_config(o);
    const auto grid = tau_grid_arg.empty() ? default_tau_grid()
                                           : parse_tau_grid(tau_grid_arg);

    const auto bundle = load_tudataset(dir, o.name);
    const auto split = split_seen_unseen(bundle, cfg.split_fraction, cfg.seed);
    const auto partitions = reference_partitions(bundle, cfg);
    std::vector<const Graph*> graphs;
    for (const auto& g : bundle.graphs) graphs.push_back(&g);

    const std::vector<int> crs = {0, 1, 2, 3, kRefineUntilStable};
    json report;
    report["config"] = config_json(o, cfg, dir);
    report["config"]["tau_grid"] = grid;

    // Quality curves: random colourings with an exact colour budget per
    // graph, over a k/N grid.
    std::string csv = "ratio,cr,gamma_bar,lambda_bar,q_bar,k_over_n\n";
    report["quality_curves"] = json::array();
    for (int step = 1; step <= 10; ++step) {
        const double ratio = step / 10.0;
        std::vector<Colouring> colours(graphs.size());
        for (size_t g = 0; g < graphs.size(); ++g) {
            const int n = graphs[g]->num_nodes();
            const int k = std::max(1, static_cast<int>(std::lround(ratio * n)));
            colours[g] = random_colouring_exact(*graphs[g], k,
                                                graph_seed(cfg.seed, static_cast<int>(g)));
        }
        for (int r : crs) {
            const auto p = score_colourings(graphs, colours, partitions,
                                            split.seen, split.unseen, r, cfg.variant);
            csv += fmt(ratio) + "," + cr_label(r) + "," + fmt(p.gamma_bar) + "," +
                   fmt(p.lambda_bar) + "," + fmt(p.q_bar) + "," + fmt(p.k_over_n) + "\n";
            json jp;
            jp["ratio"] = ratio;
            jp["cr"] = cr_label(r);
            jp["gamma_bar"] = p.gamma_bar;
            jp["lambda_bar"] = p.lambda_bar;
            jp["q_bar"] = p.q_bar;
            jp["k_over_n"] = p.k_over_n;
            report["quality_curves"].push_back(std::move(jp));
        }
    }

    // Resolution curves: mean colourfulness as a function of tau per PE.
    std::string tau_csv = "pe,tau,k_over_n\n";
    report["tau_curves"] = json::array();
    for (auto source : {FeatureSource::LapPe, FeatureSource::RwPe}) {
        const auto feats = continuous_features(bundle, source, cfg);
        std::vector<double> kn_sum(grid.size(), 0.0);
        for (size_t g = 0; g < feats.size(); ++g) {
            const auto curve = colour_count_curve(feats[g], grid);
            for (size_t t = 0; t < grid.size(); ++t) kn_sum[t] += curve[t].second;
        }
        for (size_t t = 0; t < grid.size(); ++t) {
            const double kn = kn_sum[t] / feats.size();
            tau_csv += to_string(source) + "," + fmt(grid[t]) + "," + fmt(kn) + "\n";
            json jp;
            jp["pe"] = to_string(source);
            jp["tau"] = grid[t];
            jp["k_over_n"] = kn;
            report["tau_curves"].push_back(std::move(jp));
        }
    }

    write_text(fs::path(o.out) / (o.name + "-curves.csv"), csv);
    write_text(fs::path(o.out) / (o.name + "-tau-curves.csv"), tau_csv);
    write_text(fs::path(o.out) / (o.name + "-curves.json"), report.dump(2) + "\n");
    std::cout << "wrote " << (fs::path(o.out) / (o.name + "-curves.csv")).string()
              << ", -tau-curves.csv and -curves.json\n";
    return 0;
}

// -------------------------------------------------------------------- nmi

int cmd_nmi(const CommonOpts& o, int graph_index, const std::string& norm_arg) {
    const auto dir = resolve_dataset_dir(o);
    const auto cfg = make_run_config(o);
    const auto norm = norm_arg == "mean" ? NmiNormalization::ArithmeticMean
                      : norm_arg == "sqrt"
                          ? NmiNormalization::Sqrt
                          : throw std::invalid_argument("--norm must be sqrt|mean");

    const auto bundle = load_tudataset(dir, o.name);
    const int n_graphs = static_cast<int>(bundle.graphs.size());
    if (graph_index >= n_graphs)
        throw std::invalid_argument("--graph out of range");

    auto matrix_for = [&](int g) {
        const auto& graph = bundle.graphs[g];
        const int k = cfg.clusters > 0
                          ? std::min(cfg.clusters, graph.num_nodes())
                          : default_num_clusters(graph.num_nodes());
        const auto seed = graph_seed(cfg.seed, g);
        std::vector<std::pair<std::string, Partition>> extras;
        extras.emplace_back("SC(LapPE)",
                            feature_spectral_partition(laplacian_pe(graph, cfg.pe_dim),
                                                       k, seed, cfg.affinity));
        extras.emplace_back("SC(RWPE)",
                            feature_spectral_partition(random_walk_pe(graph, cfg.pe_dim),
                                                       k, seed, cfg.affinity));
        return alignment_matrix(graph, k, seed, extras, cfg.affinity, norm);
    };

    AlignmentMatrix result = matrix_for(graph_index >= 0 ? graph_index : 0);
    if (graph_index < 0) {
        // Dataset mean, entrywise over all graphs.
        Matrix sum = Matrix::Zero(result.values.rows(), result.values.cols());
        std::vector<Matrix> per(n_graphs);
        parallel_for(n_graphs, cfg.threads,
                     [&](int g) { per[g] = matrix_for(g).values; });
        for (const auto& m : per) sum += m;
        result.values = sum / n_graphs;
    }

    json report;
    report["config"] = config_json(o, cfg, dir);
    report["config"]["nmi_normalization"] = norm_arg;
    report["graph"] = graph_index < 0 ? json("mean") : json(graph_index);
    report["labels"] = result.labels;
    report["values"] = json::array();
    std::string csv = "label";
    for (const auto& l : result.labels) csv += "," + l;
    csv += "\n";
    for (int i = 0; i < result.values.rows(); ++i) {
        json row = json::array();
        csv += result.labels[i];
        for (int j = 0; j < result.values.cols(); ++j) {
            row.push_back(result.values(i, j));
            csv += "," + fmt(result.values(i, j));
        }
        report["values"].push_back(std::move(row));
        csv += "\n";
    }

    const std::string stem = o.name + "-nmi";
    write_text(fs::path(o.out) / (stem + ".json"), report.dump(2) + "\n");
    write_text(fs::path(o.out) / (stem + ".csv"), csv);
    std::cout << "wrote " << (fs::path(o.out) / (stem + ".json")).string() << " and .csv\n";
    return 0;
}

// ------------------------------------------------------------ refine-dump

int cmd_refine_dump(const CommonOpts& o, int graph_index,
                    const std::string& rounds_arg, const std::string& init_arg) {
    const auto dir = resolve_dataset_dir(o);
    const auto cfg = make_run_config(o);
    const auto bundle = load_tudataset(dir, o.name);
    if (graph_index < 0 || graph_index >= static_cast<int>(bundle.graphs.size()))
        throw std::invalid_argument("--graph out of range");
    const auto& graph = bundle.graphs[graph_index];

    Colouring init;
    if (init_arg == "labels" && bundle.node_label_colourings) {
        init = (*bundle.node_label_colourings)[graph_index];
    } else if (init_arg == "labels") {
        throw std::invalid_argument("dataset has no node labels; use --init uniform");
    } else if (init_arg == "uniform") {
        init.colours.assign(graph.num_nodes(), 0);
        init.num_colours = 1;
    } else {
        throw std::invalid_argument("--init must be labels|uniform");
    }

    const int max_rounds = rounds_arg == "inf" ? graph.num_nodes() : parse_cr(rounds_arg);
    const auto traj = refinement_trajectory(graph, init, max_rounds);

    json report;
    report["config"] = config_json(o, cfg, dir);
    report["graph"] = graph_index;
    report["init"] = init_arg;
    report["stable_round"] = traj.stable_round;
    report["rounds"] = json::array();
    for (const auto& c : traj.rounds) {
        json jr;
        jr["colours"] = c.colours;
        jr["num_colours"] = c.num_colours;
        report["rounds"].push_back(std::move(jr));
    }

    const std::string stem = o.name + "-refine-" + std::to_string(graph_index);
    write_text(fs::path(o.out) / (stem + ".json"), report.dump(2) + "\n");
    std::cout << "wrote " << (fs::path(o.out) / (stem + ".json")).string()
              << " (stable at round " << traj.stable_round << ")\n";
    return 0;
}

// ------------------------------------------------------------ feasibility

json certificate_json(const InfeasibilityCertificate& c) {
    return json{{"colour", c.colour}, {"group_a", c.group_a}, {"group_b", c.group_b}};
}

int cmd_feasibility(const CommonOpts& o, const std::string& fixture) {
    json report;
    report["fixture"] = fixture;

    if (fixture.size() == 1 && fixture[0] >= 'a' && fixture[0] <= 'd') {
        // Seen/unseen pair: a select operator transfers exactly when the
        // pair scores q = 1 (valid colours and matching groups).
        const auto pair = fixtures::score_case(fixture[0]);
        const auto q = q_single(pair.seen.zeta, pair.seen.partition,
                                pair.unseen.zeta, pair.unseen.partition);
        report["gamma"] = q.gamma;
        report["lambda"] = q.lambda;
        report["q"] = q.q;
        report["feasible"] = q.q == 1.0;
        if (!q.invalid_colours.empty())
            report["invalid_colours"] = q.invalid_colours;
        if (!q.unmatched_groups.empty()) {
            report["unmatched_groups"] = json::array();
            for (auto [g, j] : q.unmatched_groups)
                report["unmatched_groups"].push_back(j);
        }
    } else if (fixture == "late" || fixture == "never") {
        const auto fx = fixture == "late" ? fixtures::late_separation_graph()
                                          : fixtures::never_separates_graph();
        Colouring uniform;
        uniform.colours.assign(fx.graph.num_nodes(), 0);
        uniform.num_colours = 1;
        const auto r = feasible_after_refinement(fx.graph, uniform, fx.target,
                                                 fx.graph.num_nodes());
        report["feasible"] = r.ever_feasible;
        if (r.ever_feasible) {
            report["first_feasible_round"] = r.first_feasible_round;
        } else {
            report["stable_round"] = r.stable_round;
            report["certificate"] = certificate_json(*r.stable_certificate);
        }
    } else {
        throw std::invalid_argument("--fixture must be one of a,b,c,d,late,never");
    }

    write_text(fs::path(o.out) / ("feasibility-" + fixture + ".json"),
               report.dump(2) + "\n");
    std::cout << report.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature/topology alignment diagnostics for graph pooling"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string features = "all";
    std::string cr = "all";
    std::string tau_grid;
    int graph_index = -1;
    std::string norm = "sqrt";
    std::string rounds = "inf";
    std::string init = "labels";
    std::string fixture = "b";

    auto* quality = app.add_subcommand("quality", "Score feature sources against reference partitions");
    add_common_flags(quality, o);
    quality->add_option("--features", features,
                        "empirical|same|mixed|distinct|lap-pe|rw-pe|all");
    quality->add_option("--cr", cr, "Refinement rounds: 0..n, 'inf' or 'all'");
    quality->add_option("--tau-grid", tau_grid,
                        "Threshold grid start:step:stop (or one value via --tau)");
    quality->add_option("--tau", tau_grid, "Single resolution threshold");

    auto* curves = app.add_subcommand("curves", "Quality vs colourfulness and tau curves");
    add_common_flags(curves, o);
    curves->add_option("--tau-grid", tau_grid, "Threshold grid start:step:stop");

    auto* nmi_cmd = app.add_subcommand("nmi", "Pairwise partition alignment matrix");
    add_common_flags(nmi_cmd, o);
    nmi_cmd->add_option("--graph", graph_index, "Graph index (-1: dataset mean)");
    nmi_cmd->add_option("--norm", norm, "NMI normalization: sqrt|mean");

    auto* dump = app.add_subcommand("refine-dump", "Per-round refinement colourings");
    add_common_flags(dump, o);
    dump->add_option("--graph", graph_index, "Graph index")->default_val(0);
    dump->add_option("--rounds", rounds, "Max rounds or 'inf'");
    dump->add_option("--init", init, "Initial colouring: labels|uniform");

    auto* feas = app.add_subcommand("feasibility", "Select-operator feasibility on fixtures");
    add_common_flags(feas, o);
    feas->add_option("--fixture", fixture, "a|b|c|d|late|never");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (quality->parsed()) return cmd_quality(o, features, cr, tau_grid);
        if (curves->parsed()) return cmd_curves(o, tau_grid);
        if (nmi_cmd->parsed()) return cmd_nmi(o, graph_index, norm);
        if (dump->parsed()) return cmd_refine_dump(o, graph_index, rounds, init);
        if (feas->parsed()) return cmd_feasibility(o, fixture);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
