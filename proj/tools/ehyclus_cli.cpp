// Command line front end: simulate, run, bench, plot-data.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ehyclus/error.hpp"
#include "ehyclus/io.hpp"
#include "ehyclus/pipeline.hpp"
#include "ehyclus/simulate.hpp"

namespace {

using namespace ehyclus;

constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

struct GridFlags {
  std::size_t n_basis = kDefaultBasisCount;
  std::string family = "joint";
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  std::uint64_t seed = 1;
  std::size_t restarts = 10;
  std::size_t max_iterations = 300;
  std::optional<double> kernel_sigma;
  int poly_degree = 1;
  double poly_scale = 1.0;
  double poly_offset = 1.0;
  std::optional<double> spectral_sigma;
  bool timing = false;
  std::string ds2_law = "gaussian";

  void attach(CLI::App* cmd) {
    cmd->add_option("--nbasis", n_basis, "B-spline basis size")->capture_default_str();
    cmd->add_option("--family", family, "joint | uniform_weighted | covariance_weighted")
        ->capture_default_str();
    cmd->add_option("--datasets", datasets, "index datasets (default: all 15)")
        ->delimiter(',');
    cmd->add_option("--methods", methods, "clustering methods (default: all 10)")
        ->delimiter(',');
    cmd->add_option("--seed", seed, "base seed")->capture_default_str();
    cmd->add_option("--restarts", restarts, "k-means restarts")->capture_default_str();
    cmd->add_option("--max-iter", max_iterations, "Lloyd iteration cap")
        ->capture_default_str();
    cmd->add_option("--kernel-sigma", kernel_sigma, "gaussian kernel width (default: median distance)");
    cmd->add_option("--poly-degree", poly_degree, "polynomial kernel degree")
        ->capture_default_str();
    cmd->add_option("--poly-scale", poly_scale, "polynomial kernel scale")->capture_default_str();
    cmd->add_option("--poly-offset", poly_offset, "polynomial kernel offset")
        ->capture_default_str();
    cmd->add_option("--spectral-sigma", spectral_sigma, "spectral affinity width (default: auto)");
    cmd->add_flag("--timing", timing, "record wall time per cell (results stop being reproducible)");
  }

  PipelineConfig config() const {
    PipelineConfig c;
    c.n_basis = n_basis;
    c.family = parse_index_family(family);
    if (!datasets.empty()) c.datasets = datasets;
    if (!methods.empty()) c.methods = methods;
    c.seed = seed;
    c.restarts = restarts;
    c.max_iterations = max_iterations;
    c.kernel.sigma = kernel_sigma;
    c.kernel.degree = poly_degree;
    c.kernel.scale = poly_scale;
    c.kernel.offset = poly_offset;
    c.spectral_sigma = spectral_sigma;
    c.timing = timing;
    if (ds2_law == "gaussian") {
      c.simulation.ds2_law = CoefficientLaw::gaussian;
    } else if (ds2_law == "uniform") {
      c.simulation.ds2_law = CoefficientLaw::uniform;
    } else {
      throw ArgumentError("unknown ds2 law '" + ds2_law + "'; valid laws: gaussian uniform");
    }
    return c;
  }
};

FunctionalSample load_input(const std::string& input, const std::string& format) {
  if (input == "canadian_weather") return load_canadian_weather();
  return read_sample(input, parse_sample_format(format));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text(out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering of multivariate functional data with epigraph and hypograph indexes"};
  app.set_config("--config", "", "key = value file mirroring the flags; flags win");
  app.require_subcommand(1);

  // simulate
  std::string sim_dataset;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  std::string sim_format = "wide";
  std::string sim_law = "gaussian";
  auto* simulate = app.add_subcommand("simulate", "generate ds1..ds4 with labels");
  simulate->add_option("--dataset", sim_dataset, "ds1 | ds2 | ds3 | ds4")->required();
  simulate->add_option("--seed", sim_seed, "seed")->capture_default_str();
  simulate->add_option("--out", sim_out, "output directory (wide) or file (long)")->required();
  simulate->add_option("--format", sim_format, "wide | long")->capture_default_str();
  simulate->add_option("--ds2-law", sim_law, "gaussian | uniform")->capture_default_str();

  // run
  GridFlags run_flags;
  std::string run_input;
  std::string run_input_format = "wide";
  std::size_t run_k = 2;
  std::string run_out;
  std::string run_format = "csv";
  auto* run = app.add_subcommand("run", "full method grid on one sample");
  run->add_option("--input", run_input, "sample path, or canadian_weather for the bundled data")
      ->required();
  run->add_option("--input-format", run_input_format, "wide | long")->capture_default_str();
  run->add_option("--k", run_k, "number of clusters")->capture_default_str();
  run->add_option("--out", run_out, "output file (default: stdout)");
  run->add_option("--format", run_format, "csv | json")->capture_default_str();
  run_flags.attach(run);

  // bench
  GridFlags bench_flags;
  std::string bench_dataset;
  std::size_t bench_reps = 1;
  std::string bench_out;
  std::string bench_rows_out;
  std::string bench_format = "csv";
  auto* bench_cmd = app.add_subcommand("bench", "replicated simulation benchmark");
  bench_cmd->add_option("--dataset", bench_dataset, "ds1 | ds2 | ds3 | ds4")->required();
  bench_cmd->add_option("--reps", bench_reps, "replicates")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "mean table (default: stdout)");
  bench_cmd->add_option("--rows-out", bench_rows_out, "per-replicate rows");
  bench_cmd->add_option("--format", bench_format, "csv | json")->capture_default_str();
  bench_cmd->add_option("--ds2-law", bench_flags.ds2_law, "gaussian | uniform")
      ->capture_default_str();
  bench_flags.attach(bench_cmd);

  // plot-data
  std::string plot_input;
  std::string plot_input_format = "wide";
  std::string plot_dataset;
  std::string plot_out;
  std::size_t plot_nbasis = kDefaultBasisCount;
  std::string plot_family = "joint";
  auto* plot = app.add_subcommand("plot-data", "index scatter data for one index dataset");
  plot->add_option("--input", plot_input, "sample path, or canadian_weather")->required();
  plot->add_option("--input-format", plot_input_format, "wide | long")->capture_default_str();
  plot->add_option("--dataset-name", plot_dataset, "index dataset, e.g. d.MEIMHI")->required();
  plot->add_option("--out", plot_out, "output CSV")->required();
  plot->add_option("--nbasis", plot_nbasis, "B-spline basis size")->capture_default_str();
  plot->add_option("--family", plot_family, "index family")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  PipelineConfig config;
  try {
    if (*run) {
      config = run_flags.config();
      config.k = run_k;
      config.validate();
      (void)parse_result_format(run_format);
      (void)parse_sample_format(run_input_format);
    } else if (*bench_cmd) {
      config = bench_flags.config();
      config.replicates = bench_reps;
      (void)dataset_groups(bench_dataset);
      config.validate();
      (void)parse_result_format(bench_format);
    } else if (*simulate) {
      (void)dataset_groups(sim_dataset);
      (void)parse_sample_format(sim_format);
      if (sim_law != "gaussian" && sim_law != "uniform") {
        throw ArgumentError("unknown ds2 law '" + sim_law + "'; valid laws: gaussian uniform");
      }
    } else if (*plot) {
      (void)parse_index_family(plot_family);
      (void)index_dataset_columns(plot_dataset);
      (void)parse_sample_format(plot_input_format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (*simulate) {
      SimulationOptions options;
      options.ds2_law = sim_law == "uniform" ? CoefficientLaw::uniform : CoefficientLaw::gaussian;
      write_sample(generate(sim_dataset, sim_seed, options), sim_out,
                   parse_sample_format(sim_format));
    } else if (*run) {
      const FunctionalSample sample = load_input(run_input, run_input_format);
      const auto cells = run_sample(sample, config, config.seed);
      if (sample.labels()) {
        emit(format_results(to_result_rows(cells, 1, config.seed),
                            parse_result_format(run_format)),
             run_out);
      } else {
        emit(format_partitions(cells), run_out);
      }
      for (const auto& cell : cells) {
        if (cell.error) {
          std::cerr << "warning: " << cell.dataset << " / " << cell.method << ": "
                    << *cell.error << "\n";
        }
      }
    } else if (*bench_cmd) {
      const BenchResult result = bench(bench_dataset, config);
      const ResultFormat format = parse_result_format(bench_format);
      emit(format_summary(result.summary, format), bench_out);
      if (!bench_rows_out.empty()) write_results(result.rows, bench_rows_out, format);
    } else if (*plot) {
      const FunctionalSample sample = load_input(plot_input, plot_input_format);
      const SmoothedSample smoothed = fit_bspline(sample, plot_nbasis);
      const IndexDatasets datasets =
          build_index_datasets(smoothed, parse_index_family(plot_family), {plot_dataset});
      emit_plot_data(datasets.at(plot_dataset), sample.labels(), plot_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
