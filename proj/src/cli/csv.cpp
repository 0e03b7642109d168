#include "cobos/cli/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace cobos::cli {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string format_mask(Mask m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(m));
  return buf;
}

void CsvTable::comment(std::string line) { comments_.push_back(std::move(line)); }

void CsvTable::set_header(std::vector<std::string> columns) { header_ = std::move(columns); }

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::logic_error("CsvTable: row width does not match the header");
  rows_.push_back(std::move(cells));
}

std::string CsvTable::render() const {
  std::string out;
  const auto join = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  for (const auto& c : comments_) out += "# " + c + '\n';
  join(header_);
  for (const auto& r : rows_) join(r);
  return out;
}

}  // namespace cobos::cli
