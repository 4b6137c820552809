#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace pbts::csv {

/// Splits one CSV record on commas. Double-quoted fields may contain commas
/// and "" escapes. Surrounding whitespace of unquoted fields is trimmed.
std::vector<std::string> split_line(std::string_view line);

/// A header plus data rows, blank lines skipped. `line_numbers[i]` is the
/// 1-based source line of `rows[i]`.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::size_t header_line = 0;
};

/// Reads a whole table. Throws ParseError on an empty input.
Table read_table(std::istream& in);

/// Parses a decimal floating point cell. Throws ParseError (with the given
/// row/column) if the text is not entirely a finite number.
double parse_double(std::string_view text, std::size_t row, std::size_t column);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Joins fields with commas, quoting any field that needs it.
std::string join_line(const std::vector<std::string>& fields);

}  // namespace pbts::csv
