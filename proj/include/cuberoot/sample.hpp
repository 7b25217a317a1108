#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cuberoot {

// Ordered, strictly stationary observations with named real fields.
// Row order is the time order; block subsampling relies on it.
class TimeSeriesSample {
 public:
  TimeSeriesSample() = default;
  TimeSeriesSample(std::vector<std::string> schema, std::vector<std::vector<double>> rows);

  std::size_t n() const { return rows_.size(); }
  const std::vector<std::string>& schema() const { return schema_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  // Index of a schema field; throws DataError when absent.
  std::size_t field(const std::string& name) const;
  bool has_field(const std::string& name) const;

  // Column extraction by field name.
  std::vector<double> column(const std::string& name) const;

  double at(std::size_t row, std::size_t col) const { return rows_[row][col]; }

  // Consecutive rows [start, start + len).
  TimeSeriesSample block(std::size_t start, std::size_t len) const;

  // CSV: header row = schema, one row per time index, '.' decimal separator,
  // no missing values.
  static TimeSeriesSample read_csv(const std::string& path);
  void write_csv(const std::string& path) const;

 private:
  std::vector<std::string> schema_;
  std::vector<std::vector<double>> rows_;
};

}  // namespace cuberoot
