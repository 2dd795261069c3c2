#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ehyclus/clustering.hpp"
#include "ehyclus/io.hpp"
#include "ehyclus/metrics.hpp"
#include "ehyclus/simulate.hpp"
#include "ehyclus/smoothing.hpp"

namespace ehyclus {

/// Which MEI/MHI definition feeds the feature matrices.
enum class IndexFamily { joint, uniform_weighted, covariance_weighted };

IndexFamily parse_index_family(std::string_view name);
std::string_view to_string(IndexFamily family);

/// The fifteen index dataset names in canonical order (_.MEIMHI ... _dd2.MHI).
const std::vector<std::string>& index_dataset_catalog();

/// Column names of a catalog dataset, e.g. dd2.MEIMHI -> dMEI dMHI d2MEI d2MHI.
std::vector<std::string> index_dataset_columns(std::string_view name);

struct PipelineConfig {
  std::size_t n_basis = kDefaultBasisCount;
  std::size_t k = 2;
  IndexFamily family = IndexFamily::joint;
  std::vector<std::string> datasets = index_dataset_catalog();
  std::vector<std::string> methods = method_catalog();
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
  KernelParams kernel;
  std::optional<double> spectral_sigma;
  /// Record wall time per cell. Off by default so result files depend on
  /// the inputs only.
  bool timing = false;
  SimulationOptions simulation;

  /// Throws ArgumentError listing the valid vocabulary on a bad name.
  void validate() const;
};

using IndexDatasets = std::map<std::string, FeatureMatrix>;

/// Indexes of the smoothed curves and their first two derivatives,
/// assembled into the requested catalog datasets (all fifteen by default).
IndexDatasets build_index_datasets(const SmoothedSample& smoothed, IndexFamily family,
                                   const std::vector<std::string>& names =
                                       index_dataset_catalog());

/// "kmeans.dd2.MEIMHI-euclidean", "complete.d.MEIMHI-euclidean",
/// "kkmeans._d.MEI-polynomial", "spc.dd2.MEIMHI".
std::string combination_name(std::string_view dataset, std::string_view method);

struct GridCell {
  std::string dataset;
  std::string method;
  std::uint64_t seed = 0;
  std::optional<Partition> partition;
  std::optional<EvaluationReport> report;  // when truth labels exist
  std::optional<std::string> error;
  double seconds = 0.0;
};

/// Every (dataset, method) pair of the config, in config order. Each cell's
/// RNG seed is derived from `seed` and the two names, so a cell's result does
/// not depend on which other cells run. Failures become error cells.
std::vector<GridCell> run_grid(const IndexDatasets& datasets,
                               const std::optional<std::vector<int>>& truth,
                               const PipelineConfig& config, std::uint64_t seed);

/// Result rows of labelled cells.
std::vector<ResultRow> to_result_rows(const std::vector<GridCell>& cells, int replicate,
                                      std::uint64_t seed);

/// Smooth, build the index datasets and run the grid on one sample.
std::vector<GridCell> run_sample(const FunctionalSample& sample,
                                 const PipelineConfig& config, std::uint64_t seed);

struct AggregateRow {
  std::string dataset;
  std::string method;
  std::string combination;
  double purity = 0.0;
  double f_measure = 0.0;
  double rand_index = 0.0;
  double time_seconds = 0.0;
  std::size_t replicates = 0;  // successful replicates behind the means
  std::size_t failures = 0;
};

struct BenchResult {
  std::vector<ResultRow> rows;  // every replicate, unsorted
  std::vector<AggregateRow> summary;  // sorted by mean RI descending
};

/// Seed of replicate r of a benchmark run.
std::uint64_t replicate_seed(std::uint64_t seed, std::size_t replicate);

/// Regenerates `dataset_id` (ds1..ds4) per replicate and averages the grid.
/// k comes from the dataset's number of groups.
BenchResult bench(std::string_view dataset_id, const PipelineConfig& config);

/// Stable sort of mean rows by RI descending, then dataset, then method.
std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows);

std::string format_summary(const std::vector<AggregateRow>& summary, ResultFormat format);

/// CSV of the first two columns plus the label (empty when unlabelled).
void emit_plot_data(const FeatureMatrix& data, const std::optional<std::vector<int>>& labels,
                    const std::filesystem::path& path);

/// CSV dataset,method,curve_id,cluster for every successful cell.
std::string format_partitions(const std::vector<GridCell>& cells);

}  // namespace ehyclus
