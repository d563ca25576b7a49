#include "roofem/keyval.hpp"

#include "roofem/errors.hpp"
#include "roofem/text.hpp"

namespace roofem {

KeyValDocument parse_keyval(std::string_view text) {
    KeyValDocument doc;
    doc.sections.push_back(Section{"", 0, {}});

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = (eol == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;

        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                throw SyntaxError("line " + std::to_string(line_no) +
                                  ": malformed section header '" + std::string(s) + "'");
            std::string name(trim(s.substr(1, s.size() - 2)));
            if (name.empty())
                throw SyntaxError("line " + std::to_string(line_no) + ": empty section name");
            doc.sections.push_back(Section{std::move(name), line_no, {}});
            continue;
        }

        std::size_t eq = s.find('=');
        if (eq == std::string_view::npos)
            throw SyntaxError("line " + std::to_string(line_no) +
                              ": expected 'key = value', got '" + std::string(s) + "'");
        std::string key(trim(s.substr(0, eq)));
        std::string value(trim(s.substr(eq + 1)));
        if (key.empty())
            throw SyntaxError("line " + std::to_string(line_no) + ": empty key");
        doc.sections.back().entries.push_back(KeyValue{std::move(key), std::move(value), line_no});
    }
    return doc;
}

FieldReader::FieldReader(const Section& section, std::string_view context)
    : section_(section), context_(context), consumed_(section.entries.size(), false) {}

const KeyValue* FieldReader::find(std::string_view key) {
    for (std::size_t i = 0; i < section_.entries.size(); ++i) {
        if (!consumed_[i] && section_.entries[i].key == key) {
            consumed_[i] = true;
            return &section_.entries[i];
        }
    }
    return nullptr;
}

void FieldReader::fail_value(const KeyValue& kv, std::string_view expected) const {
    throw SyntaxError("line " + std::to_string(kv.line) + ": " + context_ + " field '" +
                      kv.key + "': expected " + std::string(expected) + ", got '" + kv.value +
                      "'");
}

std::optional<std::string> FieldReader::take(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv) return std::nullopt;
    return kv->value;
}

std::string FieldReader::require_string(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv)
        throw ValidationError(context_ + ": missing required field '" + std::string(key) + "'");
    return kv->value;
}

double FieldReader::require_double(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv)
        throw ValidationError(context_ + ": missing required field '" + std::string(key) + "'");
    auto v = try_parse_double(kv->value);
    if (!v) fail_value(*kv, "a number");
    return *v;
}

std::uint64_t FieldReader::require_uint64(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv)
        throw ValidationError(context_ + ": missing required field '" + std::string(key) + "'");
    auto v = try_parse_uint64(kv->value);
    if (!v) fail_value(*kv, "a non-negative integer");
    return *v;
}

int FieldReader::require_int(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv)
        throw ValidationError(context_ + ": missing required field '" + std::string(key) + "'");
    auto v = try_parse_int64(kv->value);
    if (!v || *v < INT32_MIN || *v > INT32_MAX) fail_value(*kv, "an integer");
    return static_cast<int>(*v);
}

std::optional<double> FieldReader::optional_double(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv) return std::nullopt;
    auto v = try_parse_double(kv->value);
    if (!v) fail_value(*kv, "a number");
    return v;
}

std::optional<std::uint64_t> FieldReader::optional_uint64(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv) return std::nullopt;
    auto v = try_parse_uint64(kv->value);
    if (!v) fail_value(*kv, "a non-negative integer");
    return v;
}

std::optional<int> FieldReader::optional_int(std::string_view key) {
    const KeyValue* kv = find(key);
    if (!kv) return std::nullopt;
    auto v = try_parse_int64(kv->value);
    if (!v || *v < INT32_MIN || *v > INT32_MAX) fail_value(*kv, "an integer");
    return static_cast<int>(*v);
}

bool FieldReader::optional_bool(std::string_view key, bool fallback) {
    const KeyValue* kv = find(key);
    if (!kv) return fallback;
    if (kv->value == "true") return true;
    if (kv->value == "false") return false;
    fail_value(*kv, "'true' or 'false'");
}

std::optional<std::string> FieldReader::optional_string(std::string_view key) {
    return take(key);
}

void FieldReader::finish() const {
    for (std::size_t i = 0; i < section_.entries.size(); ++i) {
        if (!consumed_[i]) {
            const KeyValue& kv = section_.entries[i];
            throw SyntaxError("line " + std::to_string(kv.line) + ": " + context_ +
                              ": unknown key '" + kv.key + "'");
        }
    }
}

} // namespace roofem
