#include "powersph/harness/table.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"

namespace powersph::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

TableWriter::TableWriter(std::ostream& out, Format format, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
  if (format_ == Format::Csv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
    out_ << '\n';
  }
}

void TableWriter::row(const std::vector<Value>& values) {
  if (format_ == Format::Csv) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out_ << format_double(v);
            } else if constexpr (std::is_same_v<T, bool>) {
              out_ << (v ? "true" : "false");
            } else {
              out_ << v;
            }
          },
          values[i]);
    }
    out_ << '\n';
    return;
  }
  nlohmann::ordered_json obj;
  for (std::size_t i = 0; i < values.size() && i < columns_.size(); ++i) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            if (std::isfinite(v)) {
              obj[columns_[i]] = v;
            } else if (std::isnan(v)) {
              obj[columns_[i]] = nullptr;
            } else {
              obj[columns_[i]] = v > 0 ? "inf" : "-inf";
            }
          } else {
            obj[columns_[i]] = v;
          }
        },
        values[i]);
  }
  out_ << obj.dump() << '\n';
}

}  // namespace powersph::harness
