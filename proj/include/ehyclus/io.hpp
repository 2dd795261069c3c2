#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ehyclus/functional_sample.hpp"
#include "ehyclus/metrics.hpp"

namespace ehyclus {

/// long: one CSV file with header curve_id,dim,t,value (dim is 1-based),
///   labels in the sidecar <stem>.labels.csv next to it.
/// wide: a directory with dim_1.csv ... dim_p.csv, each with header
///   curve_id,<t_1>,...,<t_m>, plus an optional labels.csv.
/// Label files hold curve_id,label.
enum class SampleFormat { long_csv, wide };

SampleFormat parse_sample_format(std::string_view name);

/// Curves are ordered by ascending curve_id.
FunctionalSample read_sample(const std::filesystem::path& path, SampleFormat format);
void write_sample(const FunctionalSample& sample, const std::filesystem::path& path,
                  SampleFormat format);

std::filesystem::path labels_sidecar(const std::filesystem::path& long_file);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);
/// Whole-string parse; throws FormatError naming `where` otherwise.
double parse_double(std::string_view text, const std::string& where);

struct ResultRow {
  std::string dataset;
  std::string method;
  EvaluationReport report;
  int replicate = 0;
  std::uint64_t seed = 0;
  /// Set when the cell failed; metric fields are then meaningless.
  std::optional<std::string> error;
};

enum class ResultFormat { json, csv };

ResultFormat parse_result_format(std::string_view name);

/// Stable sort by rand_index descending, then dataset, then method. Error
/// rows go last.
void sort_results(std::vector<ResultRow>& rows);

/// CSV columns: dataset,method,purity,fmeasure,rand_index,time_seconds,
/// replicate,seed (metric fields empty on error rows). JSON: an array of
/// objects with the same keys, metrics null and an "error" key on error rows.
/// Rows are sorted with sort_results first.
std::string format_results(std::vector<ResultRow> rows, ResultFormat format);
void write_results(std::vector<ResultRow> rows, const std::filesystem::path& path,
                   ResultFormat format);

/// Directory of the bundled fixtures: $EHYCLUS_DATA_DIR when set, otherwise
/// the source tree's data/ directory.
std::filesystem::path data_directory();

/// 35 stations x (temperature, precipitation) x 365 days, labelled by
/// region (1 Atlantic, 2 Continental, 3 Pacific, 4 Arctic).
FunctionalSample load_canadian_weather();

/// Writes `text` to `path`, throwing with the path on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ehyclus
