#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace pclab {

enum class OutputFormat { csv, json };

// A plot-ready table: first column is the abscissa, strictly increasing.
class GridSeries {
 public:
  GridSeries(std::string name, std::vector<std::string> columns);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  void add_row(std::vector<double> row);
  std::map<std::string, std::string>& metadata() { return metadata_; }
  const std::map<std::string, std::string>& metadata() const { return metadata_; }

 private:
  std::string name_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::map<std::string, std::string> metadata_;
};

// 17 significant digits, '.' decimal, "nan"/"inf"/"-inf" for non-finite.
std::string format_real(double v);
std::string csv_field(const std::string& text);
std::string to_csv(const GridSeries& series);
nlohmann::json to_json(const GridSeries& series);

// Writes <dir>/<name>.csv plus a <name>.csv.meta.json sidecar, or
// <dir>/<name>.json. Returns the primary file.
std::filesystem::path write_series(const GridSeries& series, const std::filesystem::path& dir,
                                   OutputFormat format);

// Sorted keys, two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pclab
