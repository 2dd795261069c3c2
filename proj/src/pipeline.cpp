#include "ehyclus/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "ehyclus/error.hpp"
#include "ehyclus/indexes.hpp"
#include "ehyclus/parallel.hpp"
#include "ehyclus/random.hpp"

namespace ehyclus {

IndexFamily parse_index_family(std::string_view name) {
  if (name == "joint") return IndexFamily::joint;
  if (name == "uniform_weighted") return IndexFamily::uniform_weighted;
  if (name == "covariance_weighted") return IndexFamily::covariance_weighted;
  throw ArgumentError("unknown index family '" + std::string(name) +
                      "'; valid families: joint uniform_weighted covariance_weighted");
}

std::string_view to_string(IndexFamily family) {
  switch (family) {
    case IndexFamily::joint: return "joint";
    case IndexFamily::uniform_weighted: return "uniform_weighted";
    case IndexFamily::covariance_weighted: return "covariance_weighted";
  }
  return "?";
}

const std::vector<std::string>& index_dataset_catalog() {
  static const std::vector<std::string> names = {
      "_.MEIMHI", "d.MEIMHI", "d2.MEIMHI", "_d.MEIMHI", "_d2.MEIMHI",
      "dd2.MEIMHI", "_dd2.MEIMHI", "_d.MEI", "_d2.MEI", "dd2.MEI",
      "_dd2.MEI", "_d.MHI", "_d2.MHI", "dd2.MHI", "_dd2.MHI"};
  return names;
}

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& name : names) out += " " + name;
  return out;
}

// "_dd2.MEI" -> derivative orders {0, 1, 2}, indexes {MEI}.
void parse_dataset_name(std::string_view name, std::vector<int>& orders,
                        std::vector<std::string>& indexes) {
  const auto& catalog = index_dataset_catalog();
  if (std::find(catalog.begin(), catalog.end(), name) == catalog.end()) {
    throw ArgumentError("unknown index dataset '" + std::string(name) +
                        "'; valid datasets:" + join(catalog));
  }
  const std::size_t dot = name.find('.');
  std::string_view data = name.substr(0, dot);
  const std::string_view index = name.substr(dot + 1);
  orders.clear();
  if (data.starts_with("_")) {
    orders.push_back(0);
    data.remove_prefix(1);
  }
  if (data.starts_with("dd2")) {
    orders.push_back(1);
    orders.push_back(2);
  } else if (data == "d2") {
    orders.push_back(2);
  } else if (data == "d") {
    orders.push_back(1);
  }
  indexes.clear();
  if (index == "MEIMHI") {
    indexes = {"MEI", "MHI"};
  } else {
    indexes = {std::string(index)};
  }
}

const char* derivative_prefix(int order) {
  return order == 0 ? "" : order == 1 ? "d" : "d2";
}

void check_names(const std::vector<std::string>& names,
                 const std::vector<std::string>& catalog, const char* what) {
  if (names.empty()) throw ArgumentError(std::string("no ") + what + " selected");
  for (const auto& name : names) {
    if (std::find(catalog.begin(), catalog.end(), name) == catalog.end()) {
      throw ArgumentError("unknown " + std::string(what) + " '" + name + "'; valid " +
                          what + ":" + join(catalog));
    }
  }
}

// FNV-1a; names are hashed so a cell's stream is independent of grid layout.
std::uint64_t name_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::vector<std::string> index_dataset_columns(std::string_view name) {
  std::vector<int> orders;
  std::vector<std::string> indexes;
  parse_dataset_name(name, orders, indexes);
  std::vector<std::string> columns;
  for (int order : orders) {
    for (const auto& index : indexes) columns.push_back(derivative_prefix(order) + index);
  }
  return columns;
}

void PipelineConfig::validate() const {
  if (n_basis < 4) throw ArgumentError("nbasis must be >= 4");
  if (k < 1) throw ArgumentError("k must be >= 1");
  if (replicates < 1) throw ArgumentError("replicates must be >= 1");
  if (restarts < 1) throw ArgumentError("restarts must be >= 1");
  if (max_iterations < 1) throw ArgumentError("max iterations must be >= 1");
  if (kernel.sigma && !(*kernel.sigma > 0.0)) {
    throw ArgumentError("kernel sigma must be positive");
  }
  if (kernel.degree < 1) throw ArgumentError("polynomial degree must be >= 1");
  if (spectral_sigma && !(*spectral_sigma > 0.0)) {
    throw ArgumentError("spectral sigma must be positive");
  }
  check_names(datasets, index_dataset_catalog(), "datasets");
  check_names(methods, method_catalog(), "methods");
}

IndexDatasets build_index_datasets(const SmoothedSample& smoothed, IndexFamily family,
                                   const std::vector<std::string>& names) {
  // Columns by name ("MEI", "dMHI", ...), computed lazily per derivative order.
  std::map<std::string, std::vector<double>> columns;
  auto ensure = [&](int order) {
    if (columns.contains(std::string(derivative_prefix(order)) + "MEI")) return;
    const FunctionalSample curves = eval_derivative(smoothed, order);
    EpiHypoPair pair;
    switch (family) {
      case IndexFamily::joint: pair = mei_mhi(curves); break;
      case IndexFamily::uniform_weighted:
        pair = weighted_mei_mhi(curves, WeightVector::uniform(curves.n_dims()));
        break;
      case IndexFamily::covariance_weighted:
        pair = weighted_mei_mhi(curves, covariance_weights(curves));
        break;
    }
    columns[std::string(derivative_prefix(order)) + "MEI"] = std::move(pair.epigraph.values);
    columns[std::string(derivative_prefix(order)) + "MHI"] = std::move(pair.hypograph.values);
  };

  IndexDatasets out;
  for (const auto& name : names) {
    std::vector<int> orders;
    std::vector<std::string> indexes;
    parse_dataset_name(name, orders, indexes);
    for (int order : orders) ensure(order);
    const std::vector<std::string> names_here = index_dataset_columns(name);
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(smoothed.n_curves),
                         static_cast<Eigen::Index>(names_here.size()));
    for (std::size_t c = 0; c < names_here.size(); ++c) {
      const auto& column = columns.at(names_here[c]);
      for (std::size_t i = 0; i < column.size(); ++i) {
        rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = column[i];
      }
    }
    out.emplace(name, FeatureMatrix(std::move(rows), names_here));
  }
  return out;
}

std::string combination_name(std::string_view dataset, std::string_view method) {
  const MethodSpec spec = MethodSpec::from_name(method);
  const std::string ds(dataset);
  switch (spec.family) {
    case MethodFamily::hierarchical:
      return std::string(method) + "." + ds + "-euclidean";
    case MethodFamily::kmeans:
      return "kmeans." + ds + "-" + std::string(to_string(spec.metric));
    case MethodFamily::kernel_kmeans:
      return "kkmeans." + ds + "-" + std::string(to_string(spec.kernel));
    case MethodFamily::spectral:
      return "spc." + ds;
  }
  return ds + "-" + std::string(method);
}

std::vector<GridCell> run_grid(const IndexDatasets& datasets,
                               const std::optional<std::vector<int>>& truth,
                               const PipelineConfig& config, std::uint64_t seed) {
  config.validate();
  std::vector<GridCell> cells;
  for (const auto& dataset : config.datasets) {
    if (!datasets.contains(dataset)) {
      throw ArgumentError("index dataset '" + dataset + "' was not built");
    }
    for (const auto& method : config.methods) {
      GridCell cell;
      cell.dataset = dataset;
      cell.method = method;
      cell.seed = derive_seed(seed, {name_hash(dataset), name_hash(method)});
      cells.push_back(std::move(cell));
    }
  }
  std::optional<Partition> truth_partition;
  if (truth) truth_partition = Partition::canonical(*truth);

  parallel_for(cells.size(), [&](std::size_t c) {
    GridCell& cell = cells[c];
    MethodSpec spec = MethodSpec::from_name(cell.method);
    spec.k = config.k;
    spec.seed = cell.seed;
    spec.restarts = config.restarts;
    spec.max_iterations = config.max_iterations;
    spec.kernel_params = config.kernel;
    spec.spectral_sigma = config.spectral_sigma;
    const auto start = std::chrono::steady_clock::now();
    try {
      cell.partition = run_method(datasets.at(cell.dataset), spec);
      const auto stop = std::chrono::steady_clock::now();
      if (config.timing) cell.seconds = std::chrono::duration<double>(stop - start).count();
      if (truth_partition) {
        cell.report = evaluate(*cell.partition, *truth_partition);
        cell.report->elapsed_seconds = cell.seconds;
      }
    } catch (const std::exception& e) {
      cell.partition.reset();
      cell.report.reset();
      cell.error = e.what();
    }
  });
  return cells;
}

std::vector<ResultRow> to_result_rows(const std::vector<GridCell>& cells, int replicate,
                                      std::uint64_t seed) {
  std::vector<ResultRow> rows;
  rows.reserve(cells.size());
  for (const GridCell& cell : cells) {
    if (!cell.report && !cell.error) {
      throw ArgumentError("cell " + cell.dataset + " / " + cell.method +
                          " has no evaluation; the sample carries no labels");
    }
    ResultRow row;
    row.dataset = cell.dataset;
    row.method = cell.method;
    if (cell.report) row.report = *cell.report;
    row.replicate = replicate;
    row.seed = seed;
    row.error = cell.error;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<GridCell> run_sample(const FunctionalSample& sample,
                                 const PipelineConfig& config, std::uint64_t seed) {
  config.validate();
  const SmoothedSample smoothed = fit_bspline(sample, config.n_basis);
  const IndexDatasets datasets =
      build_index_datasets(smoothed, config.family, config.datasets);
  return run_grid(datasets, sample.labels(), config, seed);
}

std::uint64_t replicate_seed(std::uint64_t seed, std::size_t replicate) {
  return derive_seed(seed, {0x7265706cULL, replicate});
}

std::vector<AggregateRow> aggregate(const std::vector<ResultRow>& rows) {
  std::map<std::pair<std::string, std::string>, AggregateRow> groups;
  for (const ResultRow& row : rows) {
    AggregateRow& agg = groups[{row.dataset, row.method}];
    agg.dataset = row.dataset;
    agg.method = row.method;
    if (row.error) {
      ++agg.failures;
      continue;
    }
    agg.purity += row.report.purity;
    agg.f_measure += row.report.f_measure;
    agg.rand_index += row.report.rand_index;
    agg.time_seconds += row.report.elapsed_seconds;
    ++agg.replicates;
  }
  std::vector<AggregateRow> out;
  for (auto& [key, agg] : groups) {
    agg.combination = combination_name(agg.dataset, agg.method);
    if (agg.replicates > 0) {
      const double count = static_cast<double>(agg.replicates);
      agg.purity /= count;
      agg.f_measure /= count;
      agg.rand_index /= count;
      agg.time_seconds /= count;
    }
    out.push_back(std::move(agg));
  }
  std::stable_sort(out.begin(), out.end(), [](const AggregateRow& a, const AggregateRow& b) {
    const bool a_ok = a.replicates > 0;
    const bool b_ok = b.replicates > 0;
    if (a_ok != b_ok) return a_ok;
    if (a.rand_index != b.rand_index) return a.rand_index > b.rand_index;
    if (a.dataset != b.dataset) return a.dataset < b.dataset;
    return a.method < b.method;
  });
  return out;
}

BenchResult bench(std::string_view dataset_id, const PipelineConfig& config) {
  PipelineConfig local = config;
  local.k = dataset_groups(dataset_id);
  local.validate();
  BenchResult result;
  for (std::size_t r = 0; r < local.replicates; ++r) {
    const std::uint64_t seed = replicate_seed(local.seed, r);
    const FunctionalSample sample = generate(dataset_id, seed, local.simulation);
    const auto cells = run_sample(sample, local, seed);
    auto rows = to_result_rows(cells, static_cast<int>(r + 1), seed);
    result.rows.insert(result.rows.end(), std::make_move_iterator(rows.begin()),
                       std::make_move_iterator(rows.end()));
  }
  result.summary = aggregate(result.rows);
  return result;
}

std::string format_summary(const std::vector<AggregateRow>& summary, ResultFormat format) {
  if (format == ResultFormat::csv) {
    std::string out =
        "combination,dataset,method,purity,fmeasure,rand_index,time_seconds,replicates,"
        "failures\n";
    for (const auto& row : summary) {
      out += row.combination + "," + row.dataset + "," + row.method + ",";
      if (row.replicates > 0) {
        out += format_double(row.purity) + "," + format_double(row.f_measure) + "," +
               format_double(row.rand_index) + "," + format_double(row.time_seconds);
      } else {
        out += ",,,";
      }
      out += "," + std::to_string(row.replicates) + "," + std::to_string(row.failures) + "\n";
    }
    return out;
  }
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : summary) {
    nlohmann::ordered_json item;
    item["combination"] = row.combination;
    item["dataset"] = row.dataset;
    item["method"] = row.method;
    if (row.replicates > 0) {
      item["purity"] = row.purity;
      item["fmeasure"] = row.f_measure;
      item["rand_index"] = row.rand_index;
      item["time_seconds"] = row.time_seconds;
    } else {
      item["purity"] = item["fmeasure"] = item["rand_index"] = item["time_seconds"] = nullptr;
    }
    item["replicates"] = row.replicates;
    item["failures"] = row.failures;
    array.push_back(std::move(item));
  }
  return array.dump(2) + "\n";
}

void emit_plot_data(const FeatureMatrix& data, const std::optional<std::vector<int>>& labels,
                    const std::filesystem::path& path) {
  if (data.n_cols() < 2) throw ArgumentError("plot data needs at least 2 index columns");
  if (labels && labels->size() != data.n_rows()) {
    throw DimensionError("plot data: label count does not match rows");
  }
  std::string out = data.column_names()[0] + "," + data.column_names()[1] + ",label\n";
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    out += format_double(data.rows()(row, 0)) + "," + format_double(data.rows()(row, 1)) +
           "," + (labels ? std::to_string((*labels)[i]) : std::string()) + "\n";
  }
  write_text(path, out);
}

std::string format_partitions(const std::vector<GridCell>& cells) {
  std::string out = "dataset,method,curve_id,cluster\n";
  for (const GridCell& cell : cells) {
    if (!cell.partition) continue;
    for (std::size_t i = 0; i < cell.partition->size(); ++i) {
      out += cell.dataset + "," + cell.method + "," + std::to_string(i + 1) + "," +
             std::to_string((*cell.partition)[i]) + "\n";
    }
  }
  return out;
}

}  // namespace ehyclus
