#pragma once

#include <string>
#include <vector>

namespace cfa::csv {

// Comma-separated fields; double quotes protect fields containing commas,
// quotes, or leading/trailing spaces. Embedded newlines are not supported.
std::vector<std::string> split_line(const std::string& line);
std::string join_line(const std::vector<std::string>& fields);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Reads a whole CSV file; the first line is the header. Blank lines are
// skipped. Throws std::runtime_error when the file cannot be read.
Table read_file(const std::string& path);

// Locale-independent numeric formatting for emitted files.
std::string format_fixed(double value, int decimals);
std::string format_sig(double value, int significant_digits);
// Shortest representation that round-trips through a double.
std::string format_full(double value);

// Strict numeric parse of a full cell; throws std::invalid_argument.
double parse_number(const std::string& cell);

} // namespace cfa::csv
