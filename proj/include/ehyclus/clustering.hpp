#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ehyclus/functional_sample.hpp"

namespace ehyclus {

/// n observations x q features, finite, with one name per column.
class FeatureMatrix {
 public:
  FeatureMatrix(Eigen::MatrixXd rows, std::vector<std::string> column_names);

  const Eigen::MatrixXd& rows() const { return rows_; }
  const std::vector<std::string>& column_names() const { return column_names_; }
  std::size_t n_rows() const { return static_cast<std::size_t>(rows_.rows()); }
  std::size_t n_cols() const { return static_cast<std::size_t>(rows_.cols()); }

 private:
  Eigen::MatrixXd rows_;
  std::vector<std::string> column_names_;
};

enum class Metric { euclidean, mahalanobis };
enum class Linkage { single, complete, average, centroid, ward_d2 };
enum class Kernel { gaussian, polynomial };

std::string_view to_string(Metric metric);
std::string_view to_string(Linkage linkage);
std::string_view to_string(Kernel kernel);

/// Symmetric n x n matrix with zero diagonal.
using DistanceMatrix = Eigen::MatrixXd;

/// Euclidean distances, or Mahalanobis distances under the pooled covariance
/// of all rows (regularized by 1e-8 * trace / q on the diagonal).
DistanceMatrix pairwise_distances(const FeatureMatrix& data, Metric metric);

/// Rows mapped so that euclidean geometry equals Mahalanobis geometry of the
/// input: x -> L^{-1} (x - mean) with L L^T the regularized covariance.
Eigen::MatrixXd whiten(const Eigen::MatrixXd& rows);

struct Merge {
  std::size_t a;  // cluster slots merged; ids are the lowest member row
  std::size_t b;
  double height;
};

struct Dendrogram {
  std::vector<Merge> merges;  // n - 1 merges in order
};

/// Agglomerative clustering with Lance-Williams updates. ward_d2 and
/// centroid operate on squared distances and report heights on the distance
/// scale. Ties pick the lowest (i, j) pair.
Dendrogram agglomerate(const DistanceMatrix& dist, Linkage linkage);

/// Partition with k clusters obtained by replaying the first n - k merges.
Partition cut_tree(const Dendrogram& tree, std::size_t n, std::size_t k);

Partition hierarchical(const DistanceMatrix& dist, Linkage linkage,
                       std::size_t k);

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
  std::uint64_t seed = 0;
};

struct KMeansResult {
  Partition partition;
  /// Within-cluster sum of squared distances of the returned partition.
  double objective;
  bool converged;
  /// Objective after each Lloyd step of the winning restart.
  std::vector<double> objective_trace;
};

/// Lloyd iterations from k-means++ seeding, best of `restarts` starts.
/// Mahalanobis runs euclidean Lloyd on whitened rows.
KMeansResult kmeans(const FeatureMatrix& data, std::size_t k, Metric metric,
                    const KMeansOptions& options = {});

/// Euclidean k-means on a raw matrix (rows are points).
KMeansResult kmeans_rows(const Eigen::MatrixXd& rows, std::size_t k,
                         const KMeansOptions& options = {});

struct KernelParams {
  /// Gaussian width; median pairwise distance when unset.
  std::optional<double> sigma;
  int degree = 1;
  double scale = 1.0;
  double offset = 1.0;
};

Eigen::MatrixXd gram_matrix(const Eigen::MatrixXd& rows, Kernel kernel,
                            const KernelParams& params);

/// Median of the off-diagonal pairwise euclidean distances.
double median_distance(const Eigen::MatrixXd& rows);

/// k-means in the kernel feature space, operating on the Gram matrix only.
KMeansResult kernel_kmeans(const FeatureMatrix& data, std::size_t k,
                           Kernel kernel, const KernelParams& params = {},
                           const KMeansOptions& options = {});

/// Lloyd iterations on a precomputed Gram matrix.
KMeansResult kernel_kmeans_gram(const Eigen::MatrixXd& gram, std::size_t k,
                                const KMeansOptions& options = {});

struct SpectralOptions {
  /// Gaussian affinity width. When unset, candidate widths around the median
  /// distance are tried and the one with the tightest embedding is kept.
  std::optional<double> sigma;
  KMeansOptions kmeans;
};

/// Ng-Jordan-Weiss spectral clustering with a Gaussian affinity.
Partition spectral(const FeatureMatrix& data, std::size_t k,
                   const SpectralOptions& options = {});

/// Spectral clustering from an affinity matrix (zero diagonal expected).
/// Returns the row-normalized embedding's k-means result.
KMeansResult spectral_affinity(const Eigen::MatrixXd& affinity, std::size_t k,
                               const KMeansOptions& options = {});

enum class MethodFamily { hierarchical, kmeans, kernel_kmeans, spectral };

struct MethodSpec {
  MethodFamily family = MethodFamily::kmeans;
  Linkage linkage = Linkage::complete;
  Metric metric = Metric::euclidean;
  Kernel kernel = Kernel::gaussian;
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
  KernelParams kernel_params;
  std::optional<double> spectral_sigma;

  /// Names from the method catalog: single, complete, average, centroid,
  /// ward.D2, kmeans-euclidean, kmeans-mahalanobis, kkmeans-gaussian,
  /// kkmeans-polynomial, spc.
  static MethodSpec from_name(std::string_view name);
  std::string name() const;
};

/// The ten catalog names in canonical order.
const std::vector<std::string>& method_catalog();

Partition run_method(const FeatureMatrix& data, const MethodSpec& spec);

}  // namespace ehyclus
