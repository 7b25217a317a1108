#include "cuberoot/sample.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cuberoot/errors.hpp"

namespace cuberoot {

TimeSeriesSample::TimeSeriesSample(std::vector<std::string> schema,
                                   std::vector<std::vector<double>> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  if (rows_.empty()) throw DataError("sample must have n >= 1");
  for (const auto& r : rows_) {
    if (r.size() != schema_.size()) throw DataError("row width does not match schema");
    for (double v : r) {
      if (!std::isfinite(v)) throw DataError("non-finite value in sample");
    }
  }
}

std::size_t TimeSeriesSample::field(const std::string& name) const {
  auto it = std::find(schema_.begin(), schema_.end(), name);
  if (it == schema_.end()) throw DataError("unknown field: " + name);
  return static_cast<std::size_t>(it - schema_.begin());
}

bool TimeSeriesSample::has_field(const std::string& name) const {
  return std::find(schema_.begin(), schema_.end(), name) != schema_.end();
}

std::vector<double> TimeSeriesSample::column(const std::string& name) const {
  const std::size_t j = field(name);
  std::vector<double> out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = rows_[i][j];
  return out;
}

TimeSeriesSample TimeSeriesSample::block(std::size_t start, std::size_t len) const {
  if (start + len > rows_.size()) throw DataError("block out of range");
  std::vector<std::vector<double>> sub(rows_.begin() + static_cast<std::ptrdiff_t>(start),
                                       rows_.begin() + static_cast<std::ptrdiff_t>(start + len));
  return TimeSeriesSample(schema_, std::move(sub));
}

TimeSeriesSample TimeSeriesSample::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty CSV: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::vector<std::string> schema;
  {
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) schema.push_back(tok);
  }
  if (schema.empty()) throw DataError("CSV header has no fields: " + path);

  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw DataError(path + ":" + std::to_string(lineno) + ": bad numeric value '" + tok + "'");
      }
    }
    if (row.size() != schema.size()) {
      throw DataError(path + ":" + std::to_string(lineno) + ": wrong number of columns");
    }
    rows.push_back(std::move(row));
  }
  return TimeSeriesSample(std::move(schema), std::move(rows));
}

void TimeSeriesSample::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (std::size_t j = 0; j < schema_.size(); ++j) {
    if (j) out << ',';
    out << schema_[j];
  }
  out << '\n';
  out.precision(17);
  for (const auto& r : rows_) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out << ',';
      out << r[j];
    }
    out << '\n';
  }
}

}  // namespace cuberoot
