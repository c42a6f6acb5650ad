#include "poolq/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace poolq {

EigenDecomposition sym_eigen(const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("matrix must be square");
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("matrix must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix combinatorial_laplacian(const Graph& g) {
    const Matrix a = g.adjacency_matrix();
    Matrix l = -a;
    for (int i = 0; i < g.num_nodes(); ++i) l(i, i) += a.row(i).sum();
    return l;
}

Matrix normalized_laplacian(const Graph& g) {
    const int n = g.num_nodes();
    const Matrix a = g.adjacency_matrix();
    Eigen::VectorXd dinv_sqrt(n);
    for (int i = 0; i < n; ++i) {
        const double deg = a.row(i).sum();
        dinv_sqrt(i) = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
    }
    Matrix l = Matrix::Identity(n, n) -
               dinv_sqrt.asDiagonal() * a * dinv_sqrt.asDiagonal();
    return l;
}

std::string to_string(Affinity a) {
    return a == Affinity::Cosine ? "cosine" : "rbf";
}

Affinity affinity_from_string(const std::string& s) {
    if (s == "cosine") return Affinity::Cosine;
    if (s == "rbf") return Affinity::Rbf;
    throw std::invalid_argument("unknown affinity: " + s);
}

int default_num_clusters(int n) {
    const int k = std::max(2, static_cast<int>(std::llround(std::sqrt(n / 2.0))));
    return std::min(k, n);
}

namespace {

double kmeans_objective(const Matrix& points, const std::vector<int>& labels,
                        const Matrix& centroids) {
    double obj = 0.0;
    for (int i = 0; i < points.rows(); ++i)
        obj += (points.row(i) - centroids.row(labels[i])).squaredNorm();
    return obj;
}

struct KmeansRun {
    std::vector<int> labels;
    double objective = std::numeric_limits<double>::infinity();
};

KmeansRun kmeans_once(const Matrix& points, int k, std::mt19937_64& rng) {
    const int n = static_cast<int>(points.rows());
    Matrix centroids(k, points.cols());

    // k-means++ seeding
    std::uniform_int_distribution<int> first(0, n - 1);
    centroids.row(0) = points.row(first(rng));
    Eigen::VectorXd d2(n);
    for (int i = 0; i < n; ++i)
        d2(i) = (points.row(i) - centroids.row(0)).squaredNorm();
    for (int c = 1; c < k; ++c) {
        const double total = d2.sum();
        int pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double r = u(rng);
            for (; pick < n - 1; ++pick) {
                r -= d2(pick);
                if (r <= 0.0) break;
            }
        } else {
            pick = first(rng);
        }
        centroids.row(c) = points.row(pick);
        for (int i = 0; i < n; ++i)
            d2(i) = std::min(d2(i), (points.row(i) - centroids.row(c)).squaredNorm());
    }

    std::vector<int> labels(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d = (points.row(i) - centroids.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (labels[i] != best) {
                labels[i] = best;
                changed = true;
            }
        }
        Matrix sums = Matrix::Zero(k, points.cols());
        std::vector<int> counts(k, 0);
        for (int i = 0; i < n; ++i) {
            sums.row(labels[i]) += points.row(i);
            ++counts[labels[i]];
        }
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centroids.row(c) = sums.row(c) / counts[c];
            } else {
                // Re-seed an emptied centroid at the farthest point.
                int far = 0;
                double far_d = -1.0;
                for (int i = 0; i < n; ++i) {
                    const double d =
                        (points.row(i) - centroids.row(labels[i])).squaredNorm();
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                centroids.row(c) = points.row(far);
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
    }
    const double objective = kmeans_objective(points, labels, centroids);
    return {std::move(labels), objective};
}

Partition partition_from_labels(const std::vector<int>& labels) {
    const auto canon = canonicalize_colouring(labels);
    return Partition(canon.colour_classes());
}

Partition cluster_embedding(const Matrix& embedding, int k,
                            unsigned long long seed) {
    return partition_from_labels(kmeans(embedding, k, seed));
}

Matrix spectral_embedding(const Matrix& l_sym, int k) {
    const auto eig = sym_eigen(l_sym);
    Matrix embedding = eig.vectors.leftCols(k);
    for (int i = 0; i < embedding.rows(); ++i) {
        const double norm = embedding.row(i).norm();
        if (norm > 0.0) embedding.row(i) /= norm;
    }
    return embedding;
}

}  // namespace

std::vector<int> kmeans(const Matrix& points, int k, unsigned long long seed,
                        int restarts) {
    const int n = static_cast<int>(points.rows());
    if (k < 1 || k > n) throw std::invalid_argument("cluster count out of range");
    if (k == 1) return std::vector<int>(n, 0);
    std::mt19937_64 rng(seed);
    KmeansRun best;
    for (int r = 0; r < restarts; ++r) {
        auto run = kmeans_once(points, k, rng);
        if (run.objective < best.objective) best = std::move(run);
    }
    return best.labels;
}

Partition spectral_partition(const Graph& g, int k, unsigned long long seed) {
    if (k < 1 || k > g.num_nodes())
        throw std::invalid_argument("cluster count out of range");
    if (k == 1)
        return partition_from_labels(std::vector<int>(g.num_nodes(), 0));
    return cluster_embedding(spectral_embedding(normalized_laplacian(g), k), k, seed);
}

Partition feature_spectral_partition(const Matrix& x, int k,
                                     unsigned long long seed,
                                     Affinity affinity) {
    const int n = static_cast<int>(x.rows());
    if (k < 1 || k > n) throw std::invalid_argument("cluster count out of range");
    if (!x.allFinite())
        throw std::invalid_argument("feature matrix contains NaN or Inf");
    if (k == 1) return partition_from_labels(std::vector<int>(n, 0));

    Matrix w(n, n);
    if (affinity == Affinity::Cosine) {
        Matrix rows = x;
        for (int i = 0; i < n; ++i) {
            const double norm = rows.row(i).norm();
            if (norm > 0.0) rows.row(i) /= norm;
        }
        w = ((rows * rows.transpose()).array() + 1.0) / 2.0;  // shift to [0,1]
    } else {
        // RBF with the median pairwise squared distance as bandwidth.
        std::vector<double> d2s;
        Matrix d2(n, n);
        for (int i = 0; i < n; ++i) {
            d2(i, i) = 0.0;
            for (int j = i + 1; j < n; ++j) {
                const double d = (x.row(i) - x.row(j)).squaredNorm();
                d2(i, j) = d2(j, i) = d;
                d2s.push_back(d);
            }
        }
        std::nth_element(d2s.begin(), d2s.begin() + d2s.size() / 2, d2s.end());
        const double median = d2s.empty() ? 1.0 : d2s[d2s.size() / 2];
        const double gamma = median > 0.0 ? 1.0 / (2.0 * median) : 1.0;
        w = (-gamma * d2.array()).exp();
    }

    Eigen::VectorXd dinv_sqrt(n);
    for (int i = 0; i < n; ++i) {
        const double deg = w.row(i).sum();
        dinv_sqrt(i) = deg > 0.0 ? 1.0 / std::sqrt(deg) : 0.0;
    }
    Matrix l = Matrix::Identity(n, n) -
               dinv_sqrt.asDiagonal() * w * dinv_sqrt.asDiagonal();
    l = (l + l.transpose()) / 2.0;
    return cluster_embedding(spectral_embedding(l, k), k, seed);
}

Matrix laplacian_pe(const Graph& g, int d) {
    const int n = g.num_nodes();
    const auto eig = sym_eigen(normalized_laplacian(g));
    Matrix pe = Matrix::Zero(n, d);
    const int avail = std::min(d, n - 1);
    for (int c = 0; c < avail; ++c) {
        Eigen::VectorXd col = eig.vectors.col(c + 1);
        int arg = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(col(i));
            if (mag > best + 1e-15) {  // ties: keep the lowest index
                best = mag;
                arg = i;
            }
        }
        if (col(arg) < 0.0) col = -col;
        pe.col(c) = col;
    }
    return pe;
}

Matrix random_walk_pe(const Graph& g, int d) {
    const int n = g.num_nodes();
    if (d < 1) throw std::invalid_argument("PE dimension must be positive");
    const Matrix a = g.adjacency_matrix();
    Matrix p = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double deg = a.row(i).sum();
        if (deg > 0.0) p.row(i) = a.row(i) / deg;
    }
    Matrix pe(n, d);
    Matrix power = p;
    for (int t = 0; t < d; ++t) {
        pe.col(t) = power.diagonal();
        if (t + 1 < d) power = power * p;
    }
    return pe;
}

}  // namespace poolq
