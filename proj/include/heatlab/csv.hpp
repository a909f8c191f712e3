#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace heatlab {

// Shortest decimal that round-trips to the same double, so identical runs
// produce identical bytes on any conforming platform.
std::string format_double(double value);
std::string format_int(long long value);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  // '#'-prefixed line above the header; used for the resolved config echo.
  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
  bool header_written_ = false;
};

}  // namespace heatlab
