#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace roofem {

// ---------------------------------------------------------------------------
// Locale-independent number formatting and parsing.
//
// All CSV output goes through these helpers so that identical inputs always
// produce byte-identical text. format_double emits the shortest decimal form
// that parses back to the same double.
// ---------------------------------------------------------------------------

std::string format_double(double v);                  // shortest round-trip
std::string format_fixed(double v, int precision);    // like printf %.Nf
std::string format_general(double v, int precision);  // like printf %.Ng

// Strict parsers: the whole string must be consumed. nullopt on failure.
std::optional<double> try_parse_double(std::string_view s);
std::optional<std::uint64_t> try_parse_uint64(std::string_view s);
std::optional<std::int64_t> try_parse_int64(std::string_view s);

std::string_view trim(std::string_view s);

} // namespace roofem
