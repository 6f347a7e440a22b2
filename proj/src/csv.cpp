#include "softhaptic/csv.hpp"

#include <algorithm>
#include <charconv>
#include <istream>

#include "softhaptic/errors.hpp"

namespace softhaptic::csv {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw InputError("csv line " + std::to_string(line_no) + ": not a number: '" +
                         std::string(field) + "'");
    }
    return value;
}

}  // namespace

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::size_t Table::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InputError("csv: missing column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

Table read(std::istream& in) {
    Table table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        if (table.header.empty()) {
            table.header = split(t);
            continue;
        }
        const auto fields = split(t);
        if (fields.size() != table.header.size()) {
            throw InputError("csv line " + std::to_string(line_no) + ": expected " +
                             std::to_string(table.header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f, line_no));
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw InputError("csv: empty input");
    return table;
}

}  // namespace softhaptic::csv
