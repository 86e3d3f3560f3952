#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace powersph::harness {

enum class Format { Csv, Jsonl };

/// A cell value. Doubles are written in shortest round-trip form; NaN is
/// written as an empty CSV field and as null in JSON lines.
using Value = std::variant<std::string, double, long long, bool>;

/// Streams rows with a fixed column list: a header line then one line per
/// row for CSV, one JSON object per line for JSONL.
class TableWriter {
 public:
  TableWriter(std::ostream& out, Format format, std::vector<std::string> columns);

  void row(const std::vector<Value>& values);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
};

std::string format_double(double v);

}  // namespace powersph::harness
