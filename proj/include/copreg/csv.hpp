#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace copreg {

// Minimal RFC-4180 table: header row required, quoted fields and CRLF
// line ends accepted. Numbers are parsed/printed with from_chars /
// to_chars, so output is locale-independent (dot decimal separator).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws InvalidInput when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Strict double parse; `context` names the cell in error messages.
double parse_double(const std::string& text, const std::string& context);

// Shortest representation that round-trips exactly.
std::string format_double(double v);

}  // namespace copreg
