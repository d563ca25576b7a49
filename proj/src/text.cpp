#include "roofem/text.hpp"

#include <array>
#include <charconv>
#include <system_error>

namespace roofem {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), r.ptr);
}

std::string format_fixed(double v, int precision) {
    std::array<char, 512> buf{};
    auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                           std::chars_format::fixed, precision);
    return std::string(buf.data(), r.ptr);
}

std::string format_general(double v, int precision) {
    std::array<char, 512> buf{};
    auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                           std::chars_format::general, precision);
    return std::string(buf.data(), r.ptr);
}

namespace {

template <typename T>
std::optional<T> parse_full(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    T value{};
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

} // namespace

std::optional<double> try_parse_double(std::string_view s) {
    return parse_full<double>(s);
}

std::optional<std::uint64_t> try_parse_uint64(std::string_view s) {
    return parse_full<std::uint64_t>(s);
}

std::optional<std::int64_t> try_parse_int64(std::string_view s) {
    return parse_full<std::int64_t>(s);
}

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n';
    };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

} // namespace roofem
