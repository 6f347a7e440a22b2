#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace softhaptic::csv {

/// Minimal numeric CSV table: a header row plus rows of doubles.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a header column; throws InputError when missing.
    std::size_t column(std::string_view name) const;
};

/// Parses a header line followed by numeric rows. Blank lines and lines
/// starting with '#' are skipped. Throws InputError on malformed rows.
Table read(std::istream& in);

std::vector<std::string> split(std::string_view line, char sep = ',');

}  // namespace softhaptic::csv
