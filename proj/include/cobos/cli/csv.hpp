#pragma once

#include <string>
#include <vector>

#include "cobos/fock.hpp"

namespace cobos::cli {

/// Fixed "%.15g" rendering so identical runs give identical bytes.
std::string format_number(double x);

/// Lower-case hexadecimal with a 0x prefix.
std::string format_mask(Mask m);

/// Comment lines (prefixed '#') first, then the header, then data rows.
class CsvTable {
 public:
  void comment(std::string line);
  void set_header(std::vector<std::string> columns);
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& comments() const noexcept { return comments_; }
  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  std::string render() const;

 private:
  std::vector<std::string> comments_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace cobos::cli
