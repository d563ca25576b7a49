#include "roofem/csv.hpp"

#include "roofem/errors.hpp"

namespace roofem {

namespace {

// Splits one logical CSV record starting at `pos`. Advances pos past the
// terminating newline. Quoted fields may contain commas and newlines.
std::vector<std::string> read_record(std::string_view text, std::size_t& pos, int& line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    int start_line = line_no;

    while (pos < text.size()) {
        char c = text[pos];
        if (in_quotes) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line_no;
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            ++pos;
            ++line_no;
            fields.push_back(std::move(field));
            return fields;
        } else if (c != '\r') {
            field += c;
        }
        ++pos;
    }
    if (in_quotes)
        throw SyntaxError("line " + std::to_string(start_line) + ": unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

bool record_is_blank(const std::vector<std::string>& fields) {
    return fields.size() == 1 && fields[0].empty();
}

} // namespace

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t pos = 0;
    int line_no = 1;

    while (pos < text.size()) {
        int record_line = line_no;
        auto fields = read_record(text, pos, line_no);
        if (record_is_blank(fields)) continue;
        if (table.header.empty()) {
            table.header = std::move(fields);
        } else {
            table.rows.push_back(std::move(fields));
            table.row_lines.push_back(record_line);
        }
    }
    return table;
}

std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

} // namespace roofem
