#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace roofem {

// Minimal CSV support: comma separator, optional RFC-4180 quoting, '\n' rows.

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> row_lines;  // 1-based source line of each data row
};

// Throws SyntaxError on unbalanced quotes. An input without any data rows
// yields an empty `rows`.
CsvTable parse_csv(std::string_view text);

// Quotes a field only when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

std::string csv_join(const std::vector<std::string>& fields);

} // namespace roofem
