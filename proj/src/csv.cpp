#include "csv.hpp"

#include <charconv>
#include <cmath>

#include "hmgroup/errors.hpp"

namespace hmgroup::csv {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_field(std::size_t line, std::string_view field, std::string_view text,
                            std::string_view expected) {
    throw ParseError(line, "field '" + std::string(field) + "': expected " +
                               std::string(expected) + ", got '" + std::string(text) + "'");
}

}  // namespace

std::vector<Row> read_rows(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (trim(line).empty()) continue;
        Row row{number, {}};
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            row.fields.emplace_back(trim(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double parse_real(std::string_view text, std::size_t line, std::string_view field) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value, std::chars_format::general);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
        bad_field(line, field, text, "a finite decimal number");
    return value;
}

double parse_rational(std::string_view text, std::size_t line, std::string_view field) {
    text = trim(text);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_real(text, line, field);
    const double num = parse_real(text.substr(0, slash), line, field);
    const double den = parse_real(text.substr(slash + 1), line, field);
    if (den == 0.0) bad_field(line, field, text, "a nonzero denominator");
    return num / den;
}

long long parse_integer(std::string_view text, std::size_t line, std::string_view field) {
    text = trim(text);
    long long value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) bad_field(line, field, text, "an integer");
    return value;
}

std::string format_real(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

}  // namespace hmgroup::csv
