#include "ehyclus/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "ehyclus/error.hpp"

#ifndef EHYCLUS_DATA_DIR
#define EHYCLUS_DATA_DIR "data"
#endif

namespace ehyclus {

namespace fs = std::filesystem;

namespace {

struct CsvLine {
  std::size_t number;  // 1-based
  std::vector<std::string_view> fields;
};

class CsvFile {
 public:
  explicit CsvFile(const fs::path& path) : path_(path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text_ = buffer.str();
    std::size_t start = 0;
    std::size_t number = 0;
    while (start < text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string::npos) end = text_.size();
      ++number;
      std::string_view line(text_.data() + start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) {
        CsvLine parsed{number, {}};
        std::size_t field_start = 0;
        while (true) {
          const std::size_t comma = line.find(',', field_start);
          parsed.fields.push_back(line.substr(
              field_start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - field_start));
          if (comma == std::string_view::npos) break;
          field_start = comma + 1;
        }
        lines_.push_back(std::move(parsed));
      }
      start = end + 1;
    }
    if (lines_.empty()) throw FormatError(path.string() + ": file is empty");
  }

  const std::vector<CsvLine>& lines() const { return lines_; }
  std::string where(const CsvLine& line) const {
    return path_.string() + ":" + std::to_string(line.number);
  }

 private:
  fs::path path_;
  std::string text_;
  std::vector<CsvLine> lines_;
};

long long parse_integer(std::string_view text, const std::string& where) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(where + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

void expect_header(const CsvFile& file, std::initializer_list<std::string_view> names) {
  const CsvLine& header = file.lines().front();
  const bool match = header.fields.size() == names.size() &&
                     std::equal(names.begin(), names.end(), header.fields.begin());
  if (!match) {
    std::string expected;
    for (auto name : names) expected += (expected.empty() ? "" : ",") + std::string(name);
    throw FormatError(file.where(header) + ": expected header '" + expected + "'");
  }
}

std::map<long long, int> read_labels(const fs::path& path) {
  CsvFile file(path);
  expect_header(file, {"curve_id", "label"});
  std::map<long long, int> labels;
  for (std::size_t r = 1; r < file.lines().size(); ++r) {
    const CsvLine& line = file.lines()[r];
    const std::string where = file.where(line);
    if (line.fields.size() != 2) throw FormatError(where + ": expected 2 fields");
    const long long id = parse_integer(line.fields[0], where);
    const long long label = parse_integer(line.fields[1], where);
    if (label < 1) throw FormatError(where + ": labels must be >= 1");
    if (!labels.emplace(id, static_cast<int>(label)).second) {
      throw FormatError(where + ": duplicate curve_id " + std::to_string(id));
    }
  }
  return labels;
}

std::optional<std::vector<int>> match_labels(const fs::path& path,
                                             const std::vector<long long>& ids) {
  if (!fs::exists(path)) return std::nullopt;
  const auto labels = read_labels(path);
  std::vector<int> out;
  out.reserve(ids.size());
  for (long long id : ids) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      throw FormatError(path.string() + ": no label for curve_id " + std::to_string(id));
    }
    out.push_back(it->second);
  }
  if (labels.size() != ids.size()) {
    throw FormatError(path.string() + ": labels for curves not in the sample");
  }
  return out;
}

FunctionalSample read_long(const fs::path& path) {
  CsvFile file(path);
  expect_header(file, {"curve_id", "dim", "t", "value"});
  struct Series {
    std::vector<double> t;
    std::vector<double> value;
    std::size_t first_line;
  };
  std::map<long long, std::map<long long, Series>> curves;
  for (std::size_t r = 1; r < file.lines().size(); ++r) {
    const CsvLine& line = file.lines()[r];
    const std::string where = file.where(line);
    if (line.fields.size() != 4) {
      throw FormatError(where + ": expected 4 fields, got " +
                        std::to_string(line.fields.size()));
    }
    const long long id = parse_integer(line.fields[0], where);
    const long long dim = parse_integer(line.fields[1], where);
    if (dim < 1) throw FormatError(where + ": dim must be >= 1");
    const double t = parse_double(line.fields[2], where);
    const double value = parse_double(line.fields[3], where);
    Series& series = curves[id][dim];
    if (series.t.empty()) series.first_line = line.number;
    if (!series.t.empty() && !(t > series.t.back())) {
      throw FormatError(where + ": t values of curve " + std::to_string(id) + " dim " +
                        std::to_string(dim) + " are not strictly increasing");
    }
    series.t.push_back(t);
    series.value.push_back(value);
  }
  if (curves.empty()) throw FormatError(path.string() + ": no data rows");

  const auto& first_curve = curves.begin()->second;
  const std::size_t p = first_curve.size();
  const std::vector<double> grid = first_curve.begin()->second.t;
  std::vector<double> values;
  std::vector<long long> ids;
  for (const auto& [id, dims] : curves) {
    ids.push_back(id);
    long long expected_dim = 1;
    for (const auto& [dim, series] : dims) {
      if (dim != expected_dim) {
        throw FormatError(path.string() + ": curve " + std::to_string(id) +
                          " is missing dim " + std::to_string(expected_dim));
      }
      ++expected_dim;
      if (series.t != grid) {
        throw FormatError(path.string() + ":" + std::to_string(series.first_line) +
                          ": curve " + std::to_string(id) + " dim " +
                          std::to_string(dim) + " does not share the common grid");
      }
      values.insert(values.end(), series.value.begin(), series.value.end());
    }
    if (dims.size() != p) {
      throw FormatError(path.string() + ": curve " + std::to_string(id) + " has " +
                        std::to_string(dims.size()) + " dims, expected " +
                        std::to_string(p));
    }
  }
  auto labels = match_labels(labels_sidecar(path), ids);
  return FunctionalSample(ids.size(), p, Grid(grid), std::move(values), std::move(labels));
}

FunctionalSample read_wide(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error("wide format expects a directory, got " + dir.string());
  }
  std::vector<double> grid;
  std::vector<long long> ids;
  std::vector<std::vector<std::vector<double>>> per_dim;  // [dim][curve][point]
  for (std::size_t k = 1;; ++k) {
    const fs::path file_path = dir / ("dim_" + std::to_string(k) + ".csv");
    if (!fs::exists(file_path)) break;
    CsvFile file(file_path);
    const CsvLine& header = file.lines().front();
    if (header.fields.size() < 3 || header.fields[0] != "curve_id") {
      throw FormatError(file.where(header) +
                        ": expected header curve_id followed by grid points");
    }
    std::vector<double> t;
    for (std::size_t c = 1; c < header.fields.size(); ++c) {
      t.push_back(parse_double(header.fields[c], file.where(header)));
      if (t.size() > 1 && !(t.back() > t[t.size() - 2])) {
        throw FormatError(file.where(header) + ": grid column " + std::to_string(c) +
                          " is not strictly increasing");
      }
    }
    if (k == 1) {
      grid = t;
    } else if (t != grid) {
      throw FormatError(file.where(header) + ": grid differs from dim_1.csv");
    }
    std::map<long long, std::vector<double>> rows;
    for (std::size_t r = 1; r < file.lines().size(); ++r) {
      const CsvLine& line = file.lines()[r];
      const std::string where = file.where(line);
      if (line.fields.size() != grid.size() + 1) {
        throw FormatError(where + ": expected " + std::to_string(grid.size() + 1) +
                          " fields, got " + std::to_string(line.fields.size()));
      }
      const long long id = parse_integer(line.fields[0], where);
      std::vector<double> values;
      values.reserve(grid.size());
      for (std::size_t c = 1; c < line.fields.size(); ++c) {
        values.push_back(parse_double(line.fields[c], where));
      }
      if (!rows.emplace(id, std::move(values)).second) {
        throw FormatError(where + ": duplicate curve_id " + std::to_string(id));
      }
    }
    std::vector<long long> these_ids;
    std::vector<std::vector<double>> curves;
    for (auto& [id, values] : rows) {
      these_ids.push_back(id);
      curves.push_back(std::move(values));
    }
    if (k == 1) {
      ids = these_ids;
    } else if (these_ids != ids) {
      throw FormatError(file_path.string() + ": curve ids differ from dim_1.csv");
    }
    per_dim.push_back(std::move(curves));
  }
  if (per_dim.empty()) throw FormatError(dir.string() + ": no dim_1.csv found");
  if (ids.empty()) throw FormatError(dir.string() + ": no curves");

  const std::size_t p = per_dim.size();
  std::vector<double> values;
  values.reserve(ids.size() * p * grid.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t k = 0; k < p; ++k) {
      values.insert(values.end(), per_dim[k][i].begin(), per_dim[k][i].end());
    }
  }
  auto labels = match_labels(dir / "labels.csv", ids);
  return FunctionalSample(ids.size(), p, Grid(grid), std::move(values), std::move(labels));
}

std::string labels_text(const std::vector<int>& labels) {
  std::string out = "curve_id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i + 1) + "," + std::to_string(labels[i]) + "\n";
  }
  return out;
}

}  // namespace

SampleFormat parse_sample_format(std::string_view name) {
  if (name == "long") return SampleFormat::long_csv;
  if (name == "wide") return SampleFormat::wide;
  throw ArgumentError("unknown sample format '" + std::string(name) +
                      "'; valid formats: long wide");
}

ResultFormat parse_result_format(std::string_view name) {
  if (name == "json") return ResultFormat::json;
  if (name == "csv") return ResultFormat::csv;
  throw ArgumentError("unknown result format '" + std::string(name) +
                      "'; valid formats: json csv");
}

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw Error("cannot format floating-point value");
  return std::string(buffer, ptr);
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(where + ": expected a number, got '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) {
    throw FormatError(where + ": non-finite value '" + std::string(text) + "'");
  }
  return value;
}

fs::path labels_sidecar(const fs::path& long_file) {
  fs::path sidecar = long_file;
  sidecar.replace_filename(long_file.stem().string() + ".labels.csv");
  return sidecar;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

FunctionalSample read_sample(const fs::path& path, SampleFormat format) {
  return format == SampleFormat::long_csv ? read_long(path) : read_wide(path);
}

void write_sample(const FunctionalSample& sample, const fs::path& path,
                  SampleFormat format) {
  const std::size_t n = sample.n_curves();
  const std::size_t p = sample.n_dims();
  const std::size_t m = sample.n_points();
  std::vector<std::string> grid_text;
  for (double t : sample.grid().points()) grid_text.push_back(format_double(t));

  if (format == SampleFormat::long_csv) {
    std::string out = "curve_id,dim,t,value\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < p; ++k) {
        const std::string prefix = std::to_string(i + 1) + "," + std::to_string(k + 1) + ",";
        for (std::size_t j = 0; j < m; ++j) {
          out += prefix + grid_text[j] + "," + format_double(sample.value(i, k, j)) + "\n";
        }
      }
    }
    write_text(path, out);
    if (sample.labels()) write_text(labels_sidecar(path), labels_text(*sample.labels()));
    return;
  }

  std::error_code ec;
  fs::create_directories(path, ec);
  if (!fs::is_directory(path)) throw Error("cannot create directory " + path.string());
  for (std::size_t k = 0; k < p; ++k) {
    std::string out = "curve_id";
    for (const auto& t : grid_text) out += "," + t;
    out += "\n";
    for (std::size_t i = 0; i < n; ++i) {
      out += std::to_string(i + 1);
      for (double v : sample.component(i, k)) out += "," + format_double(v);
      out += "\n";
    }
    write_text(path / ("dim_" + std::to_string(k + 1) + ".csv"), out);
  }
  if (sample.labels()) write_text(path / "labels.csv", labels_text(*sample.labels()));
}

void sort_results(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.error.has_value() != b.error.has_value()) return !a.error.has_value();
    if (!a.error && a.report.rand_index != b.report.rand_index) {
      return a.report.rand_index > b.report.rand_index;
    }
    if (a.dataset != b.dataset) return a.dataset < b.dataset;
    return a.method < b.method;
  });
}

std::string format_results(std::vector<ResultRow> rows, ResultFormat format) {
  if (rows.empty()) throw ArgumentError("no result rows to write");
  sort_results(rows);
  if (format == ResultFormat::csv) {
    std::string out = "dataset,method,purity,fmeasure,rand_index,time_seconds,replicate,seed\n";
    for (const ResultRow& row : rows) {
      out += row.dataset + "," + row.method + ",";
      if (row.error) {
        out += ",,,";
      } else {
        out += format_double(row.report.purity) + "," +
               format_double(row.report.f_measure) + "," +
               format_double(row.report.rand_index) + "," +
               format_double(row.report.elapsed_seconds);
      }
      out += "," + std::to_string(row.replicate) + "," + std::to_string(row.seed) + "\n";
    }
    return out;
  }
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const ResultRow& row : rows) {
    nlohmann::ordered_json item;
    item["dataset"] = row.dataset;
    item["method"] = row.method;
    if (row.error) {
      item["purity"] = nullptr;
      item["fmeasure"] = nullptr;
      item["rand_index"] = nullptr;
      item["time_seconds"] = nullptr;
    } else {
      item["purity"] = row.report.purity;
      item["fmeasure"] = row.report.f_measure;
      item["rand_index"] = row.report.rand_index;
      item["time_seconds"] = row.report.elapsed_seconds;
    }
    item["replicate"] = row.replicate;
    item["seed"] = row.seed;
    if (row.error) item["error"] = *row.error;
    array.push_back(std::move(item));
  }
  return array.dump(2) + "\n";
}

void write_results(std::vector<ResultRow> rows, const fs::path& path,
                   ResultFormat format) {
  write_text(path, format_results(std::move(rows), format));
}

fs::path data_directory() {
  if (const char* env = std::getenv("EHYCLUS_DATA_DIR"); env && *env) return env;
  return EHYCLUS_DATA_DIR;
}

FunctionalSample load_canadian_weather() {
  const fs::path dir = data_directory() / "canadian_weather";
  FunctionalSample sample = read_wide(dir);
  if (sample.n_curves() != 35 || sample.n_dims() != 2 || sample.n_points() != 365 ||
      !sample.labels()) {
    throw FormatError(dir.string() + ": expected 35 labelled stations x 2 x 365 days");
  }
  return sample;
}

}  // namespace ehyclus
