#include "pbts/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "pbts/errors.hpp"

namespace pbts::csv {
namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

// Strips a UTF-8 byte order mark.
std::string_view strip_bom(std::string_view s) {
  if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
      static_cast<unsigned char>(s[1]) == 0xBB &&
      static_cast<unsigned char>(s[2]) == 0xBF) {
    return s.substr(3);
  }
  return s;
}

}  // namespace

std::vector<std::string> split_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted_field = false;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(ch);
      }
    } else if (ch == '"' && trim(current).empty()) {
      current.clear();
      in_quotes = true;
      quoted_field = true;
    } else if (ch == ',') {
      fields.push_back(quoted_field ? current : std::string(trim(current)));
      current.clear();
      quoted_field = false;
    } else {
      current.push_back(ch);
    }
  }
  fields.push_back(quoted_field ? current : std::string(trim(current)));
  return fields;
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1) view = strip_bom(view);
    if (trim(view).empty()) continue;
    if (!have_header) {
      table.header = split_line(view);
      table.header_line = line_no;
      have_header = true;
      continue;
    }
    table.rows.push_back(split_line(view));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) throw ParseError("empty CSV input", 1, 1);
  return table;
}

double parse_double(std::string_view text, std::size_t row, std::size_t column) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) throw ParseError("empty numeric cell", row, column);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError("malformed numeric cell '" + std::string(text) + "'", row,
                     column);
  }
  return value;
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

std::string join_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    const auto& f = fields[i];
    if (f.find_first_of(",\"\n") != std::string::npos) {
      out.push_back('"');
      for (const char ch : f) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
      }
      out.push_back('"');
    } else {
      out += f;
    }
  }
  return out;
}

}  // namespace pbts::csv
