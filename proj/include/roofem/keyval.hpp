#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roofem {

// ---------------------------------------------------------------------------
// Flat key-value configuration text, shared by machine and kernel files.
//
//   # comment
//   key = value
//   [section]          <- starts a repeated block (streams in kernel files)
//   key = value
//
// Values are taken verbatim after trimming; there is no quoting.
// ---------------------------------------------------------------------------

struct KeyValue {
    std::string key;
    std::string value;
    int line = 0;
};

struct Section {
    std::string name;  // "" for the preamble before any [section]
    int line = 0;
    std::vector<KeyValue> entries;
};

struct KeyValDocument {
    std::vector<Section> sections;  // sections[0] is always the preamble
};

// Throws SyntaxError (with line number) on malformed lines.
KeyValDocument parse_keyval(std::string_view text);

// ---------------------------------------------------------------------------
// Typed access to one section. Consumed keys are tracked; finish() rejects
// anything left over, so unknown keys surface as errors rather than typos
// silently ignored.
// ---------------------------------------------------------------------------
class FieldReader {
public:
    FieldReader(const Section& section, std::string_view context);

    std::optional<std::string> take(std::string_view key);

    std::string require_string(std::string_view key);
    double require_double(std::string_view key);
    std::uint64_t require_uint64(std::string_view key);
    int require_int(std::string_view key);

    std::optional<double> optional_double(std::string_view key);
    std::optional<std::uint64_t> optional_uint64(std::string_view key);
    std::optional<int> optional_int(std::string_view key);
    bool optional_bool(std::string_view key, bool fallback);
    std::optional<std::string> optional_string(std::string_view key);

    // Throws SyntaxError naming the first unconsumed key.
    void finish() const;

private:
    const Section& section_;
    std::string context_;
    std::vector<bool> consumed_;

    const KeyValue* find(std::string_view key);
    [[noreturn]] void fail_value(const KeyValue& kv, std::string_view expected) const;
};

} // namespace roofem
