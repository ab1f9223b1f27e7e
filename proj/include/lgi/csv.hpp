#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace lgi {

/// %.17g rendering of a double.
std::string format_double(double v);

/// Minimal RFC-4180 writer: fields containing ',', '"' or newlines are quoted.
class CsvWriter {
 public:
  using Cell = std::variant<std::string, double, long long>;

  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& names);
  void row(const std::vector<Cell>& cells);

 private:
  void write_field(const std::string& s);
  std::ostream& out_;
  std::size_t columns_ = 0;
};

}  // namespace lgi
