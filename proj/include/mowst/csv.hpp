#ifndef MOWST_CSV_HPP
#define MOWST_CSV_HPP

#include <string>
#include <vector>

namespace mowst::csv {

/// Reads a whole delimited text file. Empty lines are skipped; each row is
/// split on `sep` without quoting rules (none of our formats need them).
std::vector<std::vector<std::string>> read_rows(const std::string& path, char sep = ',');

std::vector<std::string> split(const std::string& line, char sep);

/// Locale-independent numeric cell. %.17g round-trips doubles exactly, so
/// files written by one run can be re-parsed bit-identically.
std::string cell(double value);

double parse_double(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

void write_file(const std::string& path, const std::string& contents);

} // namespace mowst::csv

#endif
