#include "ehyclus/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <tuple>

#include <lapacke.h>

#include "ehyclus/error.hpp"
#include "ehyclus/random.hpp"

namespace ehyclus {

FeatureMatrix::FeatureMatrix(Eigen::MatrixXd rows,
                             std::vector<std::string> column_names)
    : rows_(std::move(rows)), column_names_(std::move(column_names)) {
  if (rows_.cols() < 1) throw DimensionError("feature matrix needs q >= 1 columns");
  if (rows_.rows() < 2) throw DimensionError("feature matrix needs n >= 2 rows");
  if (column_names_.size() != static_cast<std::size_t>(rows_.cols())) {
    throw DimensionError("feature matrix has " + std::to_string(rows_.cols()) +
                         " columns but " + std::to_string(column_names_.size()) +
                         " names");
  }
  if (!rows_.allFinite()) throw ArgumentError("feature matrix has non-finite values");
}

std::string_view to_string(Metric metric) {
  return metric == Metric::euclidean ? "euclidean" : "mahalanobis";
}

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
    case Linkage::average: return "average";
    case Linkage::centroid: return "centroid";
    case Linkage::ward_d2: return "ward.D2";
  }
  return "?";
}

std::string_view to_string(Kernel kernel) {
  return kernel == Kernel::gaussian ? "gaussian" : "polynomial";
}

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = (rows.row(i) - rows.row(j)).squaredNorm();
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd whiten(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  const Eigen::Index q = rows.cols();
  if (n < 2) throw DimensionError("whiten needs at least 2 rows");
  Eigen::MatrixXd centered = rows.rowwise() - rows.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  const double trace = cov.trace();
  if (!(trace > 0.0)) {
    throw NumericalError("mahalanobis: features have zero total variance");
  }
  cov.diagonal().array() += 1e-8 * trace / static_cast<double>(q);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("mahalanobis: covariance is singular after regularization");
  }
  // Solve L y = x^T for every centered row.
  Eigen::MatrixXd whitened =
      llt.matrixL().solve(centered.transpose()).transpose();
  return whitened;
}

DistanceMatrix pairwise_distances(const FeatureMatrix& data, Metric metric) {
  Eigen::MatrixXd sq = metric == Metric::euclidean
                           ? squared_distances(data.rows())
                           : squared_distances(whiten(data.rows()));
  return sq.array().sqrt().matrix();
}

Dendrogram agglomerate(const DistanceMatrix& dist, Linkage linkage) {
  const std::size_t n = static_cast<std::size_t>(dist.rows());
  if (dist.cols() != dist.rows()) throw DimensionError("distance matrix must be square");
  if (n < 1) throw DimensionError("distance matrix is empty");
  if (!dist.allFinite()) throw ArgumentError("distance matrix has non-finite values");

  const bool squared = linkage == Linkage::ward_d2 || linkage == Linkage::centroid;
  Eigen::MatrixXd d = squared ? Eigen::MatrixXd(dist.array().square()) : dist;
  std::vector<double> size(n, 1.0);
  std::vector<bool> active(n, true);
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  constexpr double inf = std::numeric_limits<double>::infinity();
  // nn[i]: lowest-index j > i minimizing d(i, j) among active slots.
  std::vector<std::size_t> nn(n, none);
  std::vector<double> nn_dist(n, inf);

  auto refresh = [&](std::size_t i) {
    nn[i] = none;
    nn_dist[i] = inf;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (active[j] && d(idx(i), idx(j)) < nn_dist[i]) {
        nn_dist[i] = d(idx(i), idx(j));
        nn[i] = j;
      }
    }
  };
  for (std::size_t i = 0; i < n; ++i) refresh(i);

  Dendrogram tree;
  tree.merges.reserve(n > 0 ? n - 1 : 0);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t a = none;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i] && nn[i] != none && (a == none || nn_dist[i] < nn_dist[a])) a = i;
    }
    const std::size_t b = nn[a];
    const double dab = d(idx(a), idx(b));
    const double na = size[a];
    const double nb = size[b];
    const double height = squared ? std::sqrt(std::max(dab, 0.0)) : dab;
    tree.merges.push_back({a, b, height});

    for (std::size_t x = 0; x < n; ++x) {
      if (!active[x] || x == a || x == b) continue;
      const double dax = d(idx(a), idx(x));
      const double dbx = d(idx(b), idx(x));
      const double nx = size[x];
      double updated = 0.0;
      switch (linkage) {
        case Linkage::single: updated = std::min(dax, dbx); break;
        case Linkage::complete: updated = std::max(dax, dbx); break;
        case Linkage::average: updated = (na * dax + nb * dbx) / (na + nb); break;
        case Linkage::centroid:
          updated = (na * dax + nb * dbx) / (na + nb) -
                    na * nb * dab / ((na + nb) * (na + nb));
          break;
        case Linkage::ward_d2:
          updated = ((na + nx) * dax + (nb + nx) * dbx - nx * dab) / (na + nb + nx);
          break;
      }
      d(idx(a), idx(x)) = updated;
      d(idx(x), idx(a)) = updated;
    }
    active[b] = false;
    size[a] = na + nb;

    refresh(a);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || i == a) continue;
      if (nn[i] == a || nn[i] == b) {
        refresh(i);
      } else if (i < a) {
        const double da = d(idx(i), idx(a));
        if (da < nn_dist[i] || (da == nn_dist[i] && a < nn[i])) {
          nn_dist[i] = da;
          nn[i] = a;
        }
      }
    }
  }
  return tree;
}

Partition cut_tree(const Dendrogram& tree, std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw ArgumentError("cannot cut " + std::to_string(n) + " observations into " +
                        std::to_string(k) + " clusters");
  }
  if (tree.merges.size() + 1 != n) throw DimensionError("dendrogram does not match n");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t step = 0; step < n - k; ++step) {
    const Merge& m = tree.merges[step];
    parent[find(m.b)] = find(m.a);
  }
  std::vector<int> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = static_cast<int>(find(i));
  return Partition::canonical(roots);
}

Partition hierarchical(const DistanceMatrix& dist, Linkage linkage, std::size_t k) {
  const std::size_t n = static_cast<std::size_t>(dist.rows());
  if (k < 1 || k > n) {
    throw ArgumentError("hierarchical: k = " + std::to_string(k) +
                        " must lie in 1.." + std::to_string(n));
  }
  return cut_tree(agglomerate(dist, linkage), n, k);
}

namespace {

void check_k(std::size_t n, std::size_t k, const char* what) {
  if (k < 1 || k > n) {
    throw ArgumentError(std::string(what) + ": k = " + std::to_string(k) +
                        " must lie in 1.." + std::to_string(n));
  }
}

void check_options(const KMeansOptions& options) {
  if (options.restarts < 1) throw ArgumentError("restarts must be >= 1");
  if (options.max_iterations < 1) throw ArgumentError("max_iterations must be >= 1");
}

// D^2 sampling over candidate squared distances; falls back to a uniform
// draw when every point coincides with a chosen center.
std::size_t sample_proportional(const std::vector<double>& weights, Rng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) {
    std::uniform_int_distribution<std::size_t> pick(0, weights.size() - 1);
    return pick(rng);
  }
  std::uniform_real_distribution<double> draw(0.0, total);
  const double target = draw(rng);
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    running += weights[i];
    last_positive = i;
    if (target < running) return i;
  }
  return last_positive;
}

// k-means++ seeding given a distance oracle between points.
template <typename SquaredDistance>
std::vector<std::size_t> plus_plus_seeds(std::size_t n, std::size_t k, Rng& rng,
                                         SquaredDistance&& sq) {
  std::vector<std::size_t> centers;
  centers.reserve(k);
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  centers.push_back(first(rng));
  std::vector<double> closest(n);
  for (std::size_t i = 0; i < n; ++i) closest[i] = sq(i, centers[0]);
  while (centers.size() < k) {
    const std::size_t next = sample_proportional(closest, rng);
    centers.push_back(next);
    for (std::size_t i = 0; i < n; ++i) closest[i] = std::min(closest[i], sq(i, next));
  }
  return centers;
}

struct LloydRun {
  std::vector<int> assignment;  // 0-based
  double objective = 0.0;
  bool converged = false;
  std::vector<double> trace;
};

LloydRun lloyd(const Eigen::MatrixXd& x, std::size_t k, std::size_t max_iterations,
               Rng& rng) {
  const std::size_t n = static_cast<std::size_t>(x.rows());
  const auto seeds = plus_plus_seeds(n, k, rng, [&](std::size_t i, std::size_t j) {
    return (x.row(idx(i)) - x.row(idx(j))).squaredNorm();
  });
  Eigen::MatrixXd centers(idx(k), x.cols());
  for (std::size_t c = 0; c < k; ++c) centers.row(idx(c)) = x.row(idx(seeds[c]));

  LloydRun run;
  run.assignment.assign(n, -1);
  std::vector<double> point_cost(n);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double dc = (x.row(idx(i)) - centers.row(idx(c))).squaredNorm();
        if (dc < best_d) {
          best_d = dc;
          best = static_cast<int>(c);
        }
      }
      if (run.assignment[i] != best) changed = true;
      run.assignment[i] = best;
      point_cost[i] = best_d;
      objective += best_d;
    }
    run.trace.push_back(objective);
    if (!changed && iter > 0) {
      run.converged = true;
      break;
    }

    std::vector<std::size_t> counts(k, 0);
    for (int a : run.assignment) ++counts[static_cast<std::size_t>(a)];
    // Repair empty clusters with the currently worst-served point.
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[static_cast<std::size_t>(run.assignment[i])] < 2) continue;
        if (far == n || point_cost[i] > point_cost[far]) far = i;
      }
      if (far == n) break;
      --counts[static_cast<std::size_t>(run.assignment[far])];
      run.assignment[far] = static_cast<int>(c);
      point_cost[far] = 0.0;
      counts[c] = 1;
    }
    centers.setZero();
    for (std::size_t i = 0; i < n; ++i) {
      centers.row(run.assignment[i]) += x.row(idx(i));
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) centers.row(idx(c)) /= static_cast<double>(counts[c]);
    }
  }

  // Objective of the final partition about its own means.
  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(idx(k), x.cols());
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    means.row(run.assignment[i]) += x.row(idx(i));
    ++counts[static_cast<std::size_t>(run.assignment[i])];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) means.row(idx(c)) /= static_cast<double>(counts[c]);
  }
  run.objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    run.objective += (x.row(idx(i)) - means.row(run.assignment[i])).squaredNorm();
  }
  return run;
}

KMeansResult best_of(std::vector<LloydRun>& runs) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  LloydRun& winner = runs[best];
  std::vector<int> ids(winner.assignment);
  return KMeansResult{Partition::canonical(ids), winner.objective, winner.converged,
                      std::move(winner.trace)};
}

}  // namespace

KMeansResult kmeans_rows(const Eigen::MatrixXd& rows, std::size_t k,
                         const KMeansOptions& options) {
  check_k(static_cast<std::size_t>(rows.rows()), k, "kmeans");
  check_options(options);
  std::vector<LloydRun> runs;
  runs.reserve(options.restarts);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, {r}));
    runs.push_back(lloyd(rows, k, options.max_iterations, rng));
  }
  return best_of(runs);
}

KMeansResult kmeans(const FeatureMatrix& data, std::size_t k, Metric metric,
                    const KMeansOptions& options) {
  if (metric == Metric::euclidean) return kmeans_rows(data.rows(), k, options);
  return kmeans_rows(whiten(data.rows()), k, options);
}

double median_distance(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  if (n < 2) throw DimensionError("median distance needs at least 2 rows");
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) d.push_back((rows.row(i) - rows.row(j)).norm());
  }
  const std::size_t mid = d.size() / 2;
  std::nth_element(d.begin(), d.begin() + static_cast<long>(mid), d.end());
  double median = d[mid];
  if (d.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(d.begin(), d.begin() + static_cast<long>(mid)));
  }
  return median;
}

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& rows, Kernel kernel,
                            const KernelParams& params) {
  if (kernel == Kernel::polynomial) {
    if (params.degree < 1) throw ArgumentError("polynomial kernel degree must be >= 1");
    Eigen::MatrixXd inner = rows * rows.transpose();
    return (inner.array() * params.scale + params.offset).pow(params.degree).matrix();
  }
  const double sigma = params.sigma ? *params.sigma : median_distance(rows);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ArgumentError("gaussian kernel width must be positive (got " +
                        std::to_string(sigma) + ")");
  }
  return (-squared_distances(rows).array() / (2.0 * sigma * sigma)).exp().matrix();
}

KMeansResult kernel_kmeans_gram(const Eigen::MatrixXd& gram, std::size_t k,
                                const KMeansOptions& options) {
  const std::size_t n = static_cast<std::size_t>(gram.rows());
  check_k(n, k, "kernel_kmeans");
  check_options(options);
  if (gram.cols() != gram.rows()) throw DimensionError("Gram matrix must be square");
  const Eigen::VectorXd diag = gram.diagonal();

  std::vector<LloydRun> runs;
  runs.reserve(options.restarts);
  for (std::size_t r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, {r}));
    const auto seeds = plus_plus_seeds(n, k, rng, [&](std::size_t i, std::size_t j) {
      return std::max(0.0, diag(idx(i)) + diag(idx(j)) - 2.0 * gram(idx(i), idx(j)));
    });
    LloydRun run;
    run.assignment.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double dc = diag(idx(i)) + diag(idx(seeds[c])) - 2.0 * gram(idx(i), idx(seeds[c]));
        if (dc < best_d) {
          best_d = dc;
          run.assignment[i] = static_cast<int>(c);
        }
      }
    }
    // Points chosen as seeds anchor their clusters even under ties.
    for (std::size_t c = 0; c < k; ++c) run.assignment[seeds[c]] = static_cast<int>(c);

    Eigen::MatrixXd member_sum(idx(n), idx(k));  // sum_{j in c} K(i, j)
    std::vector<double> within(k);                // sum_{j,l in c} K(j, l)
    std::vector<std::size_t> counts(k);
    std::vector<double> point_cost(n);
    auto objective_of = [&](std::vector<double>& cost) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int a : run.assignment) ++counts[static_cast<std::size_t>(a)];
      Eigen::MatrixXd indicator = Eigen::MatrixXd::Zero(idx(n), idx(k));
      for (std::size_t i = 0; i < n; ++i) indicator(idx(i), run.assignment[i]) = 1.0;
      member_sum = gram * indicator;
      for (std::size_t c = 0; c < k; ++c) {
        within[c] = indicator.col(idx(c)).dot(member_sum.col(idx(c)));
      }
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(run.assignment[i]);
        const double nc = static_cast<double>(counts[c]);
        cost[i] = std::max(0.0, diag(idx(i)) - 2.0 * member_sum(idx(i), idx(c)) / nc +
                                    within[c] / (nc * nc));
        total += cost[i];
      }
      return total;
    };

    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
      run.trace.push_back(objective_of(point_cost));
      // Repair empty clusters with the worst-served point.
      for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] != 0) continue;
        std::size_t far = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (counts[static_cast<std::size_t>(run.assignment[i])] < 2) continue;
          if (far == n || point_cost[i] > point_cost[far]) far = i;
        }
        if (far == n) break;
        --counts[static_cast<std::size_t>(run.assignment[far])];
        run.assignment[far] = static_cast<int>(c);
        counts[c] = 1;
        point_cost[far] = 0.0;
        objective_of(point_cost);
      }
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        int best = run.assignment[i];
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          if (counts[c] == 0) continue;
          const double nc = static_cast<double>(counts[c]);
          const double dc = diag(idx(i)) - 2.0 * member_sum(idx(i), idx(c)) / nc +
                            within[c] / (nc * nc);
          if (dc < best_d) {
            best_d = dc;
            best = static_cast<int>(c);
          }
        }
        if (best != run.assignment[i]) {
          changed = true;
          run.assignment[i] = best;
        }
      }
      if (!changed) {
        run.converged = true;
        break;
      }
    }
    run.objective = objective_of(point_cost);
    runs.push_back(std::move(run));
  }
  return best_of(runs);
}

KMeansResult kernel_kmeans(const FeatureMatrix& data, std::size_t k, Kernel kernel,
                           const KernelParams& params, const KMeansOptions& options) {
  return kernel_kmeans_gram(gram_matrix(data.rows(), kernel, params), k, options);
}

namespace {

// Eigenvectors of the k smallest eigenvalues of a symmetric matrix
// (columns), via LAPACK's relatively robust representation driver.
Eigen::MatrixXd smallest_eigenvectors(Eigen::MatrixXd a, std::size_t k) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, static_cast<Eigen::Index>(k));
  std::vector<lapack_int> support(2 * k);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1,
      static_cast<lapack_int>(k), 0.0, &found, values.data(), vectors.data(), n,
      support.data());
  if (info != 0 || found != static_cast<lapack_int>(k)) {
    throw NumericalError("spectral: eigensolver failed (info " + std::to_string(info) +
                         ")");
  }
  return vectors;
}

Eigen::MatrixXd gaussian_affinity(const Eigen::MatrixXd& sq_dist, double sigma) {
  Eigen::MatrixXd w = (-sq_dist.array() / (2.0 * sigma * sigma)).exp().matrix();
  w.diagonal().setZero();
  return w;
}

}  // namespace

KMeansResult spectral_affinity(const Eigen::MatrixXd& affinity, std::size_t k,
                               const KMeansOptions& options) {
  const std::size_t n = static_cast<std::size_t>(affinity.rows());
  check_k(n, k, "spectral");
  if (affinity.cols() != affinity.rows()) throw DimensionError("affinity must be square");
  const Eigen::VectorXd degree = affinity.rowwise().sum();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(degree(idx(i)) > 0.0)) {
      throw DegeneracyError("spectral: observation " + std::to_string(i + 1) +
                            " has zero affinity to every other point; use a larger sigma");
    }
  }
  const Eigen::VectorXd inv_sqrt = degree.array().rsqrt();
  Eigen::MatrixXd laplacian = -(inv_sqrt.asDiagonal() * affinity * inv_sqrt.asDiagonal());
  laplacian.diagonal().array() += 1.0;
  Eigen::MatrixXd embedding = smallest_eigenvectors(std::move(laplacian), k);
  for (Eigen::Index i = 0; i < embedding.rows(); ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0.0) embedding.row(i) /= norm;
  }
  return kmeans_rows(embedding, k, options);
}

Partition spectral(const FeatureMatrix& data, std::size_t k,
                   const SpectralOptions& options) {
  check_k(data.n_rows(), k, "spectral");
  const Eigen::MatrixXd sq = squared_distances(data.rows());
  if (options.sigma) {
    if (!(*options.sigma > 0.0)) throw ArgumentError("spectral sigma must be positive");
    return spectral_affinity(gaussian_affinity(sq, *options.sigma), k, options.kmeans)
        .partition;
  }

  // Candidate widths at quantiles of the pairwise distances (the median
  // among them); keep the one whose embedding clusters most tightly.
  std::vector<double> d;
  const Eigen::Index n = sq.rows();
  d.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) d.push_back(std::sqrt(sq(i, j)));
  }
  std::sort(d.begin(), d.end());
  std::vector<double> candidates;
  for (double q : {0.05, 0.1, 0.25, 0.5}) {
    const double value = d[static_cast<std::size_t>(q * static_cast<double>(d.size() - 1))];
    if (value > 0.0 && (candidates.empty() || value > candidates.back())) {
      candidates.push_back(value);
    }
  }
  if (candidates.empty()) {
    throw DegeneracyError("spectral: all observations coincide");
  }
  std::optional<KMeansResult> best;
  std::string last_error;
  for (double sigma : candidates) {
    try {
      KMeansResult result =
          spectral_affinity(gaussian_affinity(sq, sigma), k, options.kmeans);
      if (!best || result.objective < best->objective) best = std::move(result);
    } catch (const NumericalError& e) {
      last_error = e.what();
    }
  }
  if (!best) throw DegeneracyError(last_error);
  return best->partition;
}

const std::vector<std::string>& method_catalog() {
  static const std::vector<std::string> names = {
      "single",           "complete",         "average",
      "centroid",         "ward.D2",          "kmeans-euclidean",
      "kmeans-mahalanobis", "kkmeans-gaussian", "kkmeans-polynomial",
      "spc"};
  return names;
}

MethodSpec MethodSpec::from_name(std::string_view name) {
  MethodSpec spec;
  if (name == "single" || name == "complete" || name == "average" ||
      name == "centroid" || name == "ward.D2") {
    spec.family = MethodFamily::hierarchical;
    spec.linkage = name == "single"     ? Linkage::single
                   : name == "complete" ? Linkage::complete
                   : name == "average"  ? Linkage::average
                   : name == "centroid" ? Linkage::centroid
                                        : Linkage::ward_d2;
  } else if (name == "kmeans-euclidean" || name == "kmeans-mahalanobis") {
    spec.family = MethodFamily::kmeans;
    spec.metric = name == "kmeans-euclidean" ? Metric::euclidean : Metric::mahalanobis;
  } else if (name == "kkmeans-gaussian" || name == "kkmeans-polynomial") {
    spec.family = MethodFamily::kernel_kmeans;
    spec.kernel = name == "kkmeans-gaussian" ? Kernel::gaussian : Kernel::polynomial;
  } else if (name == "spc") {
    spec.family = MethodFamily::spectral;
  } else {
    std::ostringstream msg;
    msg << "unknown method '" << name << "'; valid methods:";
    for (const auto& valid : method_catalog()) msg << ' ' << valid;
    throw ArgumentError(msg.str());
  }
  return spec;
}

std::string MethodSpec::name() const {
  switch (family) {
    case MethodFamily::hierarchical: return std::string(to_string(linkage));
    case MethodFamily::kmeans: return "kmeans-" + std::string(to_string(metric));
    case MethodFamily::kernel_kmeans: return "kkmeans-" + std::string(to_string(kernel));
    case MethodFamily::spectral: return "spc";
  }
  return "?";
}

Partition run_method(const FeatureMatrix& data, const MethodSpec& spec) {
  if (spec.k < 1) throw ArgumentError("k must be >= 1");
  const KMeansOptions options{spec.restarts, spec.max_iterations, spec.seed};
  switch (spec.family) {
    case MethodFamily::hierarchical:
      return hierarchical(pairwise_distances(data, Metric::euclidean), spec.linkage,
                          spec.k);
    case MethodFamily::kmeans:
      return kmeans(data, spec.k, spec.metric, options).partition;
    case MethodFamily::kernel_kmeans:
      return kernel_kmeans(data, spec.k, spec.kernel, spec.kernel_params, options)
          .partition;
    case MethodFamily::spectral:
      return spectral(data, spec.k, SpectralOptions{spec.spectral_sigma, options});
  }
  throw ArgumentError("unknown method family");
}

}  // namespace ehyclus
