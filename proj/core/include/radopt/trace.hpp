#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace radopt {

/// One row of a training trace: a step index plus named scalar columns.
struct TraceRow {
  std::int64_t step = 0;
  std::vector<double> scalars;
};

/// Append-only per-step record with a fixed column schema. Serializes to
/// locale-independent CSV ('.' decimal separator, %.17g doubles) so that
/// deterministic runs produce byte-identical files.
class Trace {
 public:
  explicit Trace(std::vector<std::string> columns);

  /// Appends a row; step must be strictly greater than the previous step.
  void append(std::int64_t step, const std::vector<double>& scalars);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<TraceRow>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

  /// Index of a named column, or throws if absent.
  std::size_t column_index(const std::string& name) const;

  /// All values of one column, in step order.
  std::vector<double> column(const std::string& name) const;

  std::string to_csv() const;
  void write_csv(const std::string& path) const;

  static Trace read_csv(const std::string& path);

 private:
  std::vector<std::string> columns_;
  std::vector<TraceRow> rows_;
};

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double x);

}  // namespace radopt
