#include "heatlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace heatlab {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) {
    throw std::runtime_error("csv: could not format double");
  }
  return std::string(buf, res.ptr);
}

std::string format_int(long long value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc()) {
    throw std::runtime_error("csv: could not format integer");
  }
  return std::string(buf, res.ptr);
}

void CsvWriter::comment(const std::string& text) {
  if (header_written_) {
    throw std::logic_error("csv: comments must precede the header");
  }
  out_ << "# " << text << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  if (header_written_) {
    throw std::logic_error("csv: header already written");
  }
  if (columns.empty()) {
    throw std::logic_error("csv: header needs at least one column");
  }
  columns_ = columns.size();
  header_written_ = true;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out_ << (i == 0 ? "" : ",") << columns[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (!header_written_) {
    throw std::logic_error("csv: header must come before rows");
  }
  if (cells.size() != columns_) {
    throw std::logic_error("csv: row width does not match header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out_ << (i == 0 ? "" : ",") << cells[i];
  }
  out_ << "\n";
}

}  // namespace heatlab
