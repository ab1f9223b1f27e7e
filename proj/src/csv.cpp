#include "lgi/csv.hpp"

#include <cstdio>

#include "lgi/errors.hpp"

namespace lgi {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::write_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    out_ << s;
    return;
  }
  out_ << '"';
  for (char c : s) {
    if (c == '"') out_ << '"';
    out_ << c;
  }
  out_ << '"';
}

void CsvWriter::header(const std::vector<std::string>& names) {
  columns_ = names.size();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out_ << ',';
    write_field(names[i]);
  }
  out_ << "\r\n";
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (columns_ != 0 && cells.size() != columns_) throw DomainError("CsvWriter: row width differs from header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::string>)
            write_field(v);
          else if constexpr (std::is_same_v<T, double>)
            out_ << format_double(v);
          else
            out_ << v;
        },
        cells[i]);
  }
  out_ << "\r\n";
}

}  // namespace lgi
