#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace hmgroup::csv {

struct Row {
    std::size_t line;  // 1-based physical line number
    std::vector<std::string> fields;
};

/// Reads all non-blank lines, splitting on ','. Fields are whitespace-trimmed.
std::vector<Row> read_rows(std::istream& in);

/// Strict decimal parse ('.' separator, optional exponent); throws ParseError.
double parse_real(std::string_view text, std::size_t line, std::string_view field);

/// Accepts `p/q` or a decimal.
double parse_rational(std::string_view text, std::size_t line, std::string_view field);

long long parse_integer(std::string_view text, std::size_t line, std::string_view field);

/// Shortest representation that round-trips.
std::string format_real(double value);

}  // namespace hmgroup::csv
