#include "pclab/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "pclab/error.hpp"

namespace pclab {

GridSeries::GridSeries(std::string name, std::vector<std::string> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  require(!columns_.empty(), ErrorKind::invalid_argument, "series needs at least one column");
}

void GridSeries::add_row(std::vector<double> row) {
  require(row.size() == columns_.size(), ErrorKind::invalid_argument,
          "row width " + std::to_string(row.size()) + " does not match " +
              std::to_string(columns_.size()) + " columns in " + name_);
  require(rows_.empty() || row.front() > rows_.back().front(), ErrorKind::invalid_argument,
          "abscissas must increase strictly in " + name_);
  rows_.push_back(std::move(row));
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const GridSeries& series) {
  std::string out;
  const auto& cols = series.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += csv_field(cols[i]);
  }
  out += "\r\n";
  for (const auto& row : series.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_real(row[i]);
    }
    out += "\r\n";
  }
  return out;
}

nlohmann::json to_json(const GridSeries& series) {
  nlohmann::json j;
  j["name"] = series.name();
  j["columns"] = series.columns();
  j["metadata"] = series.metadata();
  auto rows = nlohmann::json::array();
  for (const auto& row : series.rows()) {
    auto r = nlohmann::json::array();
    // JSON has no NaN; non-finite values go out as strings
    for (double v : row) {
      if (std::isfinite(v))
        r.push_back(v);
      else
        r.push_back(format_real(v));
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write " + path.string());
  out << text;
  out.flush();
  require(static_cast<bool>(out), ErrorKind::io, "write failed for " + path.string());
}

std::filesystem::path write_series(const GridSeries& series, const std::filesystem::path& dir,
                                   OutputFormat format) {
  if (format == OutputFormat::json) {
    const auto path = dir / (series.name() + ".json");
    write_text(path, dump_json(to_json(series)));
    return path;
  }
  const auto path = dir / (series.name() + ".csv");
  write_text(path, to_csv(series));
  nlohmann::json meta;
  meta["name"] = series.name();
  meta["columns"] = series.columns();
  meta["metadata"] = series.metadata();
  write_text(dir / (series.name() + ".csv.meta.json"), dump_json(meta));
  return path;
}

}  // namespace pclab
