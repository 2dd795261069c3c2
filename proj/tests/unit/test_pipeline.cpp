#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "ehyclus/error.hpp"
#include "ehyclus/pipeline.hpp"

using namespace ehyclus;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

int run_cli(const std::string& args) {
  const std::string command = std::string(EHYCLUS_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const SmoothedSample& ds1_smoothed() {
  static const SmoothedSample smoothed = fit_bspline(gen_ds1(1));
  return smoothed;
}

}  // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("dataset catalog") {
  const auto& names = index_dataset_catalog();
  REQUIRE(names.size() == 15);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == 15);
  CHECK(index_dataset_columns("_d.MEI") == std::vector<std::string>{"MEI", "dMEI"});
  CHECK(index_dataset_columns("dd2.MEIMHI") ==
        std::vector<std::string>{"dMEI", "dMHI", "d2MEI", "d2MHI"});
  CHECK(index_dataset_columns("_dd2.MEIMHI").size() == 6);
  CHECK(index_dataset_columns("_.MEIMHI") == std::vector<std::string>{"MEI", "MHI"});
  CHECK_THROWS_AS(index_dataset_columns("dd3.MEI"), ArgumentError);
  try {
    index_dataset_columns("d.EI");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("dd2.MEIMHI") != std::string::npos);
  }
}

TEST_CASE("index datasets") {
  for (IndexFamily family :
       {IndexFamily::joint, IndexFamily::uniform_weighted, IndexFamily::covariance_weighted}) {
    CAPTURE(to_string(family));
    const IndexDatasets datasets = build_index_datasets(ds1_smoothed(), family);
    REQUIRE(datasets.size() == 15);
    for (const auto& name : index_dataset_catalog()) {
      const FeatureMatrix& data = datasets.at(name);
      CHECK(data.n_rows() == 100);
      CHECK(data.column_names() == index_dataset_columns(name));
      CHECK(data.rows().minCoeff() >= 0.0);
      CHECK(data.rows().maxCoeff() <= 1.0);
    }
  }
  // shared columns agree between datasets
  const IndexDatasets joint = build_index_datasets(ds1_smoothed(), IndexFamily::joint);
  CHECK(joint.at("_d.MEI").rows().col(1) == joint.at("d.MEIMHI").rows().col(0));
  CHECK(parse_index_family("covariance_weighted") == IndexFamily::covariance_weighted);
  CHECK_THROWS_AS(parse_index_family("mean"), ArgumentError);
}

TEST_CASE("config validation") {
  PipelineConfig config;
  CHECK_NOTHROW(config.validate());
  config.methods = {"kmeans-euclidean", "svc"};
  CHECK_THROWS_AS(config.validate(), ArgumentError);
  config = {};
  config.datasets = {"d.MEIMHI", "dd.MEI"};
  CHECK_THROWS_AS(config.validate(), ArgumentError);
  config = {};
  config.kernel.sigma = -1.0;
  CHECK_THROWS_AS(config.validate(), ArgumentError);
  config = {};
  config.restarts = 0;
  CHECK_THROWS_AS(config.validate(), ArgumentError);
}

TEST_CASE("full grid has 150 rows and is reproducible") {
  PipelineConfig config;
  const auto sample = gen_ds1(replicate_seed(1, 0));
  const auto cells = run_sample(sample, config, 11);
  REQUIRE(cells.size() == 150);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& cell : cells) {
    CHECK_FALSE(cell.error);
    CHECK(cell.report);
    CHECK(cell.seconds == 0.0);
    seen.emplace(cell.dataset, cell.method);
  }
  CHECK(seen.size() == 150);

  const auto text = format_results(to_result_rows(cells, 1, 11), ResultFormat::csv);
  CHECK(line_count(text) == 151);
  const auto again = format_results(to_result_rows(run_sample(sample, config, 11), 1, 11),
                                    ResultFormat::csv);
  CHECK(text == again);

  // cells do not depend on which other cells run
  PipelineConfig narrow;
  narrow.datasets = {"dd2.MEIMHI"};
  narrow.methods = {"kmeans-euclidean"};
  const auto single = run_sample(sample, narrow, 11);
  REQUIRE(single.size() == 1);
  for (const auto& cell : cells) {
    if (cell.dataset == "dd2.MEIMHI" && cell.method == "kmeans-euclidean") {
      CHECK(*cell.partition == *single[0].partition);
    }
  }
}

TEST_CASE("unlabelled input emits partitions") {
  PipelineConfig config;
  config.datasets = {"d.MEIMHI"};
  config.methods = {"complete", "spc"};
  const auto sample = gen_ds4(2).with_labels(std::nullopt);
  config.k = 4;
  const auto cells = run_sample(sample, config, 1);
  REQUIRE(cells.size() == 2);
  CHECK_FALSE(cells[0].report);
  REQUIRE(cells[0].partition);
  const std::string text = format_partitions(cells);
  CHECK(line_count(text) == 201);
  CHECK(text.rfind("dataset,method,curve_id,cluster\n", 0) == 0);
}

TEST_CASE("failed cells become error rows") {
  // k larger than the sample: every method fails, the grid still completes
  PipelineConfig config;
  config.k = 200;
  config.datasets = {"d.MEIMHI"};
  config.methods = {"average", "kmeans-euclidean"};
  const auto cells = run_sample(gen_ds4(1), config, 1);
  REQUIRE(cells.size() == 2);
  for (const auto& cell : cells) CHECK(cell.error);
  const auto rows = to_result_rows(cells, 1, 1);
  CHECK(rows[0].error);
}

TEST_CASE("bench and aggregation") {
  PipelineConfig config;
  config.datasets = {"d.MEIMHI", "dd2.MEIMHI"};
  config.methods = {"complete", "kmeans-euclidean"};
  config.replicates = 1;
  const BenchResult one = bench("ds4", config);
  REQUIRE(one.rows.size() == 4);
  REQUIRE(one.summary.size() == 4);
  for (const auto& agg : one.summary) {
    const auto match = std::find_if(one.rows.begin(), one.rows.end(), [&](const ResultRow& r) {
      return r.dataset == agg.dataset && r.method == agg.method;
    });
    REQUIRE(match != one.rows.end());
    CHECK(agg.rand_index == match->report.rand_index);
    CHECK(agg.purity == match->report.purity);
    CHECK(agg.replicates == 1);
  }
  for (std::size_t i = 1; i < one.summary.size(); ++i) {
    CHECK(one.summary[i - 1].rand_index >= one.summary[i].rand_index);
  }

  config.replicates = 3;
  const BenchResult three = bench("ds4", config);
  CHECK(three.rows.size() == 12);
  // the first replicate is the same sample as before
  CHECK(three.rows[0].seed == one.rows[0].seed);
  CHECK(three.rows[0].report.rand_index == one.rows[0].report.rand_index);
  CHECK(format_summary(three.summary, ResultFormat::csv) ==
        format_summary(bench("ds4", config).summary, ResultFormat::csv));
  CHECK(combination_name("dd2.MEIMHI", "kmeans-euclidean") ==
        "kmeans.dd2.MEIMHI-euclidean");
  CHECK(combination_name("d.MEIMHI", "complete") == "complete.d.MEIMHI-euclidean");
  CHECK(combination_name("d.MEIMHI", "spc") == "spc.d.MEIMHI");
}

TEST_CASE("aggregate means") {
  std::vector<ResultRow> rows(3);
  for (std::size_t i = 0; i < 3; ++i) {
    rows[i].dataset = "d.MEIMHI";
    rows[i].method = "spc";
    rows[i].report.rand_index = 0.5 + 0.1 * static_cast<double>(i);
  }
  rows[2].error = "failed";
  const auto summary = aggregate(rows);
  REQUIRE(summary.size() == 1);
  CHECK(summary[0].rand_index == doctest::Approx(0.55));
  CHECK(summary[0].replicates == 2);
  CHECK(summary[0].failures == 1);
}

TEST_CASE("plot data") {
  const fs::path out = fs::temp_directory_path() / "ehyclus_plot_data.csv";
  const IndexDatasets datasets =
      build_index_datasets(ds1_smoothed(), IndexFamily::joint, {"d.MEIMHI"});
  REQUIRE(datasets.size() == 1);
  emit_plot_data(datasets.at("d.MEIMHI"), ds1_smoothed().labels, out);
  const std::string text = slurp(out);
  fs::remove(out);
  CHECK(line_count(text) == 101);
  CHECK(text.rfind("dMEI,dMHI,label\n", 0) == 0);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 2);
    const double a = std::stod(line.substr(0, line.find(',')));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
}

TEST_CASE("command line") {
  const fs::path dir = fs::temp_directory_path() / "ehyclus_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = dir.string();

  CHECK(run_cli("simulate --dataset ds4 --seed 3 --out " + d + "/ds4") == 0);
  CHECK(fs::exists(dir / "ds4" / "dim_2.csv"));
  CHECK(run_cli("run --input " + d + "/ds4 --k 4 --datasets d.MEIMHI --methods complete,spc --out " +
                d + "/a.csv") == 0);
  CHECK(run_cli("run --input " + d + "/ds4 --k 4 --datasets d.MEIMHI --methods complete,spc --out " +
                d + "/b.csv") == 0);
  CHECK(line_count(slurp(dir / "a.csv")) == 3);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));

  // config file values, overridden by a flag
  std::ofstream(dir / "run.ini") << "[run]\nk = 4\ndatasets = d.MEIMHI\nmethods = average\n"
                                    "format = json\n";
  CHECK(run_cli("--config " + d + "/run.ini run --input " + d + "/ds4 --out " + d +
                "/c.json --methods single") == 0);
  const std::string json = slurp(dir / "c.json");
  CHECK(json.find("\"single\"") != std::string::npos);
  CHECK(json.find("\"average\"") == std::string::npos);

  CHECK(run_cli("plot-data --input canadian_weather --dataset-name d.MEIMHI --out " + d +
                "/plot.csv") == 0);
  CHECK(line_count(slurp(dir / "plot.csv")) == 36);

  // configuration errors
  CHECK(run_cli("run --input " + d + "/ds4 --methods svc") == 1);
  CHECK(run_cli("bench --dataset ds9") == 1);
  CHECK(run_cli("run --input " + d + "/ds4 --format xml") == 1);
  CHECK(run_cli("frobnicate") == 1);
  // runtime errors
  CHECK(run_cli("run --input " + d + "/missing") == 2);
  fs::remove_all(dir);
}

TEST_SUITE_END();
