#include "radopt/trace.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radopt {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Trace::Trace(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("trace needs at least one column");
}

void Trace::append(std::int64_t step, const std::vector<double>& scalars) {
  if (scalars.size() != columns_.size()) {
    throw std::invalid_argument("trace row width mismatch");
  }
  if (!rows_.empty() && step <= rows_.back().step) {
    throw std::invalid_argument("trace step must be strictly increasing");
  }
  rows_.push_back(TraceRow{step, scalars});
}

std::size_t Trace::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i] == name) return i;
  }
  throw std::invalid_argument("trace has no column named '" + name + "'");
}

std::vector<double> Trace::column(const std::string& name) const {
  const std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row.scalars[idx]);
  return out;
}

std::string Trace::to_csv() const {
  std::string out = "step";
  for (const auto& c : columns_) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (const auto& row : rows_) {
    out += std::to_string(row.step);
    for (double v : row.scalars) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

void Trace::write_csv(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << to_csv();
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

Trace Trace::read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(f, line)) throw std::runtime_error("empty trace file '" + path + "'");
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
  }
  if (cols.empty() || cols[0] != "step") {
    throw std::runtime_error("malformed trace header in '" + path + "'");
  }
  Trace trace(std::vector<std::string>(cols.begin() + 1, cols.end()));
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    std::int64_t step = std::stoll(cell);
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    trace.append(step, vals);
  }
  return trace;
}

}  // namespace radopt
