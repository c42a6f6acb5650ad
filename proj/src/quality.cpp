#include "poolq/quality.hpp"

#include "poolq/discretize.hpp"
#include "poolq/refine.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace poolq {
namespace {

constexpr int kNone = -1;
constexpr int kInvalid = -2;

void check_sizes(const Colouring& zeta, const Partition& p) {
    if (zeta.size() != p.num_nodes())
        throw std::invalid_argument("colouring and partition cover different node sets");
}

/// Colour sets of the seen groups, for subset queries.
std::vector<std::unordered_set<int>> group_colour_sets(const Colouring& zeta,
                                                       const Partition& p,
                                                       std::size_t* ops) {
    std::vector<std::unordered_set<int>> sets(p.num_groups());
    for (int j = 0; j < p.num_groups(); ++j) {
        for (int v : p.group(j)) {
            sets[j].insert(zeta.colours[v]);
            if (ops) ++*ops;
        }
    }
    return sets;
}

bool group_matches(const std::unordered_set<int>& seen_colours,
                   const Colouring& zeta_u, const std::vector<int>& group_u,
                   std::size_t* ops) {
    for (int v : group_u) {
        if (ops) ++*ops;
        if (!seen_colours.contains(zeta_u.colours[v])) return false;
    }
    return true;
}

}  // namespace

GammaResult gamma(const Colouring& zeta, const Partition& p) {
    check_sizes(zeta, p);
    std::vector<int> table(zeta.num_colours, kNone);
    int present = 0;
    GammaResult result;
    for (int j = 0; j < p.num_groups(); ++j) {
        for (int v : p.group(j)) {
            const int c = zeta.colours[v];
            if (table[c] == kNone) {
                table[c] = j;
                ++present;
            } else if (table[c] != kInvalid && table[c] != j) {
                table[c] = kInvalid;
                result.invalid_colours.push_back(c);
            }
        }
    }
    std::sort(result.invalid_colours.begin(), result.invalid_colours.end());
    result.value =
        static_cast<double>(present - static_cast<int>(result.invalid_colours.size())) /
        present;
    return result;
}

LambdaFullResult lambda_full(const Colouring& zeta_s, const Partition& p_s,
                             const Colouring& zeta_u, const Partition& p_u) {
    check_sizes(zeta_s, p_s);
    check_sizes(zeta_u, p_u);
    LambdaFullResult result;
    const auto seen_sets = group_colour_sets(zeta_s, p_s, &result.membership_ops);
    for (int j = 0; j < p_u.num_groups(); ++j) {
        bool transferable = false;
        for (const auto& s : seen_sets) {
            if (group_matches(s, zeta_u, p_u.group(j), &result.membership_ops)) {
                transferable = true;
                break;
            }
        }
        if (!transferable) {
            result.unmatched_groups.push_back(j);
            result.value = 0;
            return result;  // early exit, per-group cost already paid
        }
    }
    result.value = 1;
    return result;
}

double lambda_ratio(const Colouring& zeta_s, const Partition& p_s,
                    const Colouring& zeta_u, const Partition& p_u) {
    check_sizes(zeta_s, p_s);
    check_sizes(zeta_u, p_u);
    const auto seen_sets = group_colour_sets(zeta_s, p_s, nullptr);
    int matched = 0;
    for (int j = 0; j < p_u.num_groups(); ++j) {
        for (const auto& s : seen_sets) {
            if (group_matches(s, zeta_u, p_u.group(j), nullptr)) {
                ++matched;
                break;
            }
        }
    }
    return static_cast<double>(matched) / p_u.num_groups();
}

int lambda_group(const std::vector<const ColouredPartition*>& seen,
                 const Colouring& zeta_u, const std::vector<int>& group_u) {
    for (const auto* cp : seen) {
        const auto sets = group_colour_sets(cp->zeta, cp->partition, nullptr);
        for (const auto& s : sets)
            if (group_matches(s, zeta_u, group_u, nullptr)) return 1;
    }
    return 0;
}

QualityReport q_single(const Colouring& zeta_s, const Partition& p_s,
                       const Colouring& zeta_u, const Partition& p_u,
                       TransferVariant variant) {
    QualityReport report;
    report.variant = variant;
    const auto gs = gamma(zeta_s, p_s);
    const auto gu = gamma(zeta_u, p_u);
    report.gamma = (gs.value + gu.value) / 2.0;
    report.invalid_colours = gs.invalid_colours;
    report.invalid_colours.insert(report.invalid_colours.end(),
                                  gu.invalid_colours.begin(),
                                  gu.invalid_colours.end());
    switch (variant) {
        case TransferVariant::Full: {
            const auto lf = lambda_full(zeta_s, p_s, zeta_u, p_u);
            report.lambda = lf.value;
            for (int j : lf.unmatched_groups) report.unmatched_groups.emplace_back(1, j);
            break;
        }
        case TransferVariant::Ratio:
        case TransferVariant::Group:
            // For a single pair the ratio and group variants coincide.
            report.lambda = lambda_ratio(zeta_s, p_s, zeta_u, p_u);
            break;
    }
    report.q = std::min(report.gamma, report.lambda);
    return report;
}

double gamma_bar(const std::vector<ColouredPartition>& graphs) {
    if (graphs.empty()) throw std::invalid_argument("no graphs");
    double sum = 0.0;
    for (const auto& cp : graphs) sum += gamma(cp.zeta, cp.partition).value;
    return sum / graphs.size();
}

double lambda_bar(const std::vector<ColouredPartition>& graphs,
                  const std::vector<int>& seen, const std::vector<int>& unseen,
                  TransferVariant variant) {
    if (seen.empty() || unseen.empty())
        throw std::invalid_argument("seen and unseen sets must be nonempty");
    switch (variant) {
        case TransferVariant::Full: {
            int matched = 0;
            for (int u : unseen) {
                for (int s : seen) {
                    if (lambda_full(graphs[s].zeta, graphs[s].partition,
                                    graphs[u].zeta, graphs[u].partition)
                            .value == 1) {
                        ++matched;
                        break;
                    }
                }
            }
            return static_cast<double>(matched) / unseen.size();
        }
        case TransferVariant::Ratio: {
            double sum = 0.0;
            for (int u : unseen) {
                double best = 0.0;
                for (int s : seen)
                    best = std::max(best,
                                    lambda_ratio(graphs[s].zeta, graphs[s].partition,
                                                 graphs[u].zeta, graphs[u].partition));
                sum += best;
            }
            return sum / unseen.size();
        }
        case TransferVariant::Group: {
            std::vector<const ColouredPartition*> seen_cps;
            for (int s : seen) seen_cps.push_back(&graphs[s]);
            int matched = 0;
            int total = 0;
            for (int u : unseen) {
                const auto& cp = graphs[u];
                for (int j = 0; j < cp.partition.num_groups(); ++j) {
                    matched += lambda_group(seen_cps, cp.zeta, cp.partition.group(j));
                    ++total;
                }
            }
            return static_cast<double>(matched) / total;
        }
    }
    return 0.0;
}

QualityReport q_bar(const std::vector<ColouredPartition>& graphs,
                    const std::vector<int>& seen, const std::vector<int>& unseen,
                    TransferVariant variant) {
    QualityReport report;
    report.variant = variant;
    report.gamma = gamma_bar(graphs);
    report.lambda = lambda_bar(graphs, seen, unseen, variant);
    report.q = std::min(report.gamma, report.lambda);

    for (size_t g = 0; g < graphs.size(); ++g) {
        for (int c : gamma(graphs[g].zeta, graphs[g].partition).invalid_colours)
            if (!std::count(report.invalid_colours.begin(),
                            report.invalid_colours.end(), c))
                report.invalid_colours.push_back(c);
    }
    std::sort(report.invalid_colours.begin(), report.invalid_colours.end());

    std::vector<const ColouredPartition*> seen_cps;
    for (int s : seen) seen_cps.push_back(&graphs[s]);
    for (int u : unseen) {
        const auto& cp = graphs[u];
        for (int j = 0; j < cp.partition.num_groups(); ++j)
            if (!lambda_group(seen_cps, cp.zeta, cp.partition.group(j)))
                report.unmatched_groups.emplace_back(u, j);
    }
    return report;
}

TauSweepPoint score_colourings(const std::vector<const Graph*>& graphs,
                               const std::vector<Colouring>& colours,
                               const std::vector<Partition>& partitions,
                               const std::vector<int>& seen,
                               const std::vector<int>& unseen, int cr_rounds,
                               TransferVariant variant) {
    TauSweepPoint point;
    double kn = 0.0;
    for (size_t g = 0; g < graphs.size(); ++g) {
        std::unordered_set<int> distinct(colours[g].colours.begin(),
                                         colours[g].colours.end());
        kn += static_cast<double>(distinct.size()) / graphs[g]->num_nodes();
    }
    point.k_over_n = kn / graphs.size();

    const auto refined = cr_rounds == 0
                             ? refine_colours_joint(graphs, colours, 0)
                             : refine_colours_joint(graphs, colours, cr_rounds);
    std::vector<ColouredPartition> cps;
    cps.reserve(graphs.size());
    for (size_t g = 0; g < graphs.size(); ++g)
        cps.push_back({refined[g], partitions[g]});

    point.gamma_bar = gamma_bar(cps);
    point.lambda_bar = lambda_bar(cps, seen, unseen, variant);
    point.q_bar = std::min(point.gamma_bar, point.lambda_bar);
    return point;
}

namespace {

/// Per-unseen-group match flags for one seen/unseen pair.
std::vector<char> matched_groups(const Colouring& zeta_s, const Partition& p_s,
                                 const Colouring& zeta_u, const Partition& p_u) {
    const auto seen_sets = group_colour_sets(zeta_s, p_s, nullptr);
    std::vector<char> matched(p_u.num_groups(), 0);
    for (int j = 0; j < p_u.num_groups(); ++j)
        for (const auto& s : seen_sets)
            if (group_matches(s, zeta_u, p_u.group(j), nullptr)) {
                matched[j] = 1;
                break;
            }
    return matched;
}

}  // namespace

TauSweepResult sweep_tau(const std::vector<const Graph*>& graphs,
                         const std::vector<Matrix>& features,
                         const std::vector<Partition>& partitions,
                         const std::vector<int>& seen,
                         const std::vector<int>& unseen, int cr_rounds,
                         const std::vector<double>& tau_grid,
                         TransferVariant variant) {
    if (tau_grid.empty()) throw std::invalid_argument("empty tau grid");
    if (graphs.size() != features.size() || graphs.size() != partitions.size())
        throw std::invalid_argument("graphs, features and partitions must align");
    if (seen.empty() || unseen.empty())
        throw std::invalid_argument("seen and unseen sets must be nonempty");
    const auto dim = features.front().cols();
    for (const auto& x : features)
        if (x.cols() != dim)
            throw std::invalid_argument("feature dimension differs between graphs");

    const int m = static_cast<int>(tau_grid.size());
    const int n_graphs = static_cast<int>(graphs.size());

    // Validity and colourfulness come from per-graph discretization: they
    // never compare colours across graphs.
    std::vector<double> gamma_sum(m, 0.0);
    std::vector<double> kn_sum(m, 0.0);
    for (int g = 0; g < n_graphs; ++g) {
        const auto cols = colourings_over_grid(features[g], tau_grid);
        for (int t = 0; t < m; ++t) {
            kn_sum[t] +=
                static_cast<double>(cols[t].num_colours) / graphs[g]->num_nodes();
            const auto refined = cr_rounds == 0
                                     ? cols[t]
                                     : refine_colours(*graphs[g], cols[t], cr_rounds);
            gamma_sum[t] += gamma(refined, partitions[g]).value;
        }
    }

    // Transferability compares each seen/unseen pair on the colouring of the
    // pair's pooled rows, so similar vectors share a colour across the pair.
    std::vector<std::vector<char>> full_matched;    // [t][ui]
    std::vector<std::vector<double>> best_ratio;    // [t][ui]
    std::vector<std::vector<std::vector<char>>> group_matched;  // [t][ui][j]
    const int n_unseen = static_cast<int>(unseen.size());
    if (variant == TransferVariant::Full)
        full_matched.assign(m, std::vector<char>(n_unseen, 0));
    if (variant == TransferVariant::Ratio)
        best_ratio.assign(m, std::vector<double>(n_unseen, 0.0));
    if (variant == TransferVariant::Group) {
        group_matched.assign(m, {});
        for (int t = 0; t < m; ++t) {
            group_matched[t].resize(n_unseen);
            for (int ui = 0; ui < n_unseen; ++ui)
                group_matched[t][ui].assign(partitions[unseen[ui]].num_groups(), 0);
        }
    }

    for (int ui = 0; ui < n_unseen; ++ui) {
        const int u = unseen[ui];
        const int nu = graphs[u]->num_nodes();
        int open = m;  // grid points not yet matched (Full early exit)
        for (int s : seen) {
            if (variant == TransferVariant::Full && open == 0) break;
            const int ns = graphs[s]->num_nodes();
            Matrix both(ns + nu, dim);
            both.topRows(ns) = features[s];
            both.bottomRows(nu) = features[u];
            const auto cols = colourings_over_grid(both, tau_grid);
            for (int t = 0; t < m; ++t) {
                if (variant == TransferVariant::Full && full_matched[t][ui]) continue;
                Colouring zeta_s{{cols[t].colours.begin(), cols[t].colours.begin() + ns},
                                 cols[t].num_colours};
                Colouring zeta_u{{cols[t].colours.begin() + ns, cols[t].colours.end()},
                                 cols[t].num_colours};
                if (cr_rounds != 0) {
                    auto refined = refine_colours_joint({graphs[s], graphs[u]},
                                                        {zeta_s, zeta_u}, cr_rounds);
                    zeta_s = std::move(refined[0]);
                    zeta_u = std::move(refined[1]);
                }
                switch (variant) {
                    case TransferVariant::Full:
                        if (lambda_full(zeta_s, partitions[s], zeta_u, partitions[u])
                                .value == 1) {
                            full_matched[t][ui] = 1;
                            --open;
                        }
                        break;
                    case TransferVariant::Ratio:
                        best_ratio[t][ui] = std::max(
                            best_ratio[t][ui],
                            lambda_ratio(zeta_s, partitions[s], zeta_u, partitions[u]));
                        break;
                    case TransferVariant::Group: {
                        const auto mg = matched_groups(zeta_s, partitions[s], zeta_u,
                                                       partitions[u]);
                        for (size_t j = 0; j < mg.size(); ++j)
                            group_matched[t][ui][j] |= mg[j];
                        break;
                    }
                }
            }
        }
    }

    TauSweepResult result;
    result.q_star = -1.0;
    for (int t = 0; t < m; ++t) {
        TauSweepPoint point;
        point.tau = tau_grid[t];
        point.gamma_bar = gamma_sum[t] / n_graphs;
        point.k_over_n = kn_sum[t] / n_graphs;
        double lambda = 0.0;
        switch (variant) {
            case TransferVariant::Full:
                for (int ui = 0; ui < n_unseen; ++ui) lambda += full_matched[t][ui];
                lambda /= n_unseen;
                break;
            case TransferVariant::Ratio:
                for (int ui = 0; ui < n_unseen; ++ui) lambda += best_ratio[t][ui];
                lambda /= n_unseen;
                break;
            case TransferVariant::Group: {
                int matched = 0;
                int total_groups = 0;
                for (int ui = 0; ui < n_unseen; ++ui) {
                    for (char f : group_matched[t][ui]) matched += f;
                    total_groups += static_cast<int>(group_matched[t][ui].size());
                }
                lambda = static_cast<double>(matched) / total_groups;
                break;
            }
        }
        point.lambda_bar = lambda;
        point.q_bar = std::min(point.gamma_bar, point.lambda_bar);
        if (point.q_bar > result.q_star) {  // ties keep the smallest tau
            result.q_star = point.q_bar;
            result.tau_star = point.tau;
            result.k_over_n_star = point.k_over_n;
        }
        result.curve.push_back(point);
    }
    return result;
}

}  // namespace poolq
