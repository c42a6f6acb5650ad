#include "poolq/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace poolq {

double nmi(const Partition& p, const Partition& q, NmiNormalization norm) {
    const int n = p.num_nodes();
    if (n != q.num_nodes())
        throw std::invalid_argument("partitions cover different node sets");

    Matrix table = Matrix::Zero(p.num_groups(), q.num_groups());
    for (int v = 0; v < n; ++v) table(p.group_of(v), q.group_of(v)) += 1.0;

    const Eigen::VectorXd row_sums = table.rowwise().sum();
    const Eigen::VectorXd col_sums = table.colwise().sum();

    double hp = 0.0;
    double hq = 0.0;
    double mi = 0.0;
    for (int i = 0; i < p.num_groups(); ++i) {
        const double pi = row_sums(i) / n;
        if (pi > 0.0) hp -= pi * std::log(pi);
    }
    for (int j = 0; j < q.num_groups(); ++j) {
        const double pj = col_sums(j) / n;
        if (pj > 0.0) hq -= pj * std::log(pj);
    }
    for (int i = 0; i < p.num_groups(); ++i) {
        for (int j = 0; j < q.num_groups(); ++j) {
            const double pij = table(i, j) / n;
            if (pij > 0.0)
                mi += pij * std::log(pij * n * n / (row_sums(i) * col_sums(j)));
        }
    }

    if (hp == 0.0 || hq == 0.0)
        return (p.num_groups() == 1 && q.num_groups() == 1) ? 1.0 : 0.0;
    const double denom = norm == NmiNormalization::Sqrt
                             ? std::sqrt(hp * hq)
                             : (hp + hq) / 2.0;
    const double value = mi / denom;
    return std::clamp(value, 0.0, 1.0);
}

AlignmentMatrix alignment_matrix(
    const Graph& g, int k, unsigned long long seed,
    const std::vector<std::pair<std::string, Partition>>& extras,
    Affinity affinity, NmiNormalization norm) {
    if (!g.has_features())
        throw std::invalid_argument("graph has no features for SC(X)");

    std::vector<std::pair<std::string, Partition>> parts;
    parts.emplace_back("SC(A)", spectral_partition(g, k, seed));
    parts.emplace_back("SC(X)",
                       feature_spectral_partition(g.features(), k, seed, affinity));
    for (const auto& e : extras) parts.push_back(e);

    AlignmentMatrix out;
    const int m = static_cast<int>(parts.size());
    out.values = Matrix::Identity(m, m);
    for (const auto& [label, part] : parts) out.labels.push_back(label);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            out.values(i, j) = out.values(j, i) =
                nmi(parts[i].second, parts[j].second, norm);
    return out;
}

}  // namespace poolq
