#include "roofem/traffic_oracle.hpp"

#include <charconv>
#include <cmath>
#include <list>
#include <unordered_map>

#include "roofem/errors.hpp"
#include "roofem/text.hpp"

namespace roofem {

void validate_cache_config(const CacheSimConfig& cfg) {
    if (cfg.line_bytes == 0 || (cfg.line_bytes & (cfg.line_bytes - 1)) != 0)
        throw ValidationError("cache config: field 'line_bytes' must be a power of two");
    if (cfg.capacity_bytes == 0 || cfg.capacity_bytes % cfg.line_bytes != 0)
        throw ValidationError(
            "cache config: field 'capacity_bytes' must be a positive multiple of line_bytes");
    std::uint64_t lines = cfg.capacity_bytes / cfg.line_bytes;
    if (cfg.associativity > 0 && lines % cfg.associativity != 0)
        throw ValidationError(
            "cache config: field 'associativity' must divide the line count when set");
}

TracePattern trace_pattern_from_string(std::string_view s) {
    if (s == "stream") return TracePattern::stream;
    if (s == "gather8") return TracePattern::gather8;
    if (s == "stream_store") return TracePattern::stream_store;
    throw DomainError("unknown trace pattern '" + std::string(s) +
                      "' (expected stream, gather8, or stream_store)");
}

AccessTrace generate_trace(TracePattern pattern, std::uint64_t n_elems,
                           std::uint32_t elem_bytes,
                           std::span<const std::uint64_t> index_table) {
    if (n_elems < 1) throw ContractError("trace generation needs n_elems >= 1");
    if (elem_bytes == 0) throw ContractError("trace generation needs elem_bytes >= 1");

    AccessTrace trace;
    switch (pattern) {
        case TracePattern::stream:
            trace.events.reserve(n_elems);
            for (std::uint64_t i = 0; i < n_elems; ++i)
                trace.events.push_back({i * elem_bytes, elem_bytes, AccessKind::load});
            break;
        case TracePattern::stream_store:
            trace.events.reserve(n_elems);
            for (std::uint64_t i = 0; i < n_elems; ++i)
                trace.events.push_back({i * elem_bytes, elem_bytes, AccessKind::store});
            break;
        case TracePattern::gather8: {
            if (index_table.size() < 8 * n_elems)
                throw ContractError("gather8 needs an index table of 8 x n_elems entries, got " +
                                    std::to_string(index_table.size()));
            // Index array lives at offset 0; the gathered data array starts
            // on the next line boundary after it.
            std::uint64_t index_bytes = 8 * n_elems * 4;
            std::uint64_t data_base = (index_bytes + 63) / 64 * 64;
            trace.events.reserve(16 * n_elems);
            for (std::uint64_t e = 0; e < n_elems; ++e) {
                for (int j = 0; j < 8; ++j)
                    trace.events.push_back({(8 * e + j) * 4, 4, AccessKind::load});
                for (int j = 0; j < 8; ++j) {
                    std::uint64_t idx = index_table[8 * e + j];
                    trace.events.push_back(
                        {data_base + idx * elem_bytes, elem_bytes, AccessKind::load});
                }
            }
            break;
        }
    }
    return trace;
}

namespace {

struct CacheLine {
    std::uint64_t tag;
    bool dirty;
};

// One set: MRU at the front of the list, tag lookup via hash map.
struct CacheSet {
    std::list<CacheLine> lines;
    std::unordered_map<std::uint64_t, std::list<CacheLine>::iterator> lookup;
};

class LruCache {
public:
    LruCache(const CacheSimConfig& cfg) : line_bytes_(cfg.line_bytes) {
        std::uint64_t total_lines = cfg.capacity_bytes / cfg.line_bytes;
        ways_ = cfg.associativity == 0 ? total_lines : cfg.associativity;
        sets_.resize(cfg.associativity == 0 ? 1 : total_lines / cfg.associativity);
    }

    // Touches one line; returns hit/miss and performs the traffic accounting.
    void access(std::uint64_t line_no, AccessKind kind, bool write_allocate,
                TrafficResult& result) {
        CacheSet& set = sets_[line_no % sets_.size()];
        auto found = set.lookup.find(line_no);

        if (found != set.lookup.end()) {
            ++result.hits;
            set.lines.splice(set.lines.begin(), set.lines, found->second);
            if (kind == AccessKind::store) found->second->dirty = true;
            return;
        }

        if (kind == AccessKind::store && !write_allocate) {
            // Streaming store: no allocation. A one-line write-combining
            // buffer merges consecutive misses to the same line.
            if (wc_line_valid_ && wc_line_ == line_no) {
                ++result.hits;
            } else {
                ++result.misses;
                result.mem_store_bytes += line_bytes_;
                wc_line_ = line_no;
                wc_line_valid_ = true;
            }
            return;
        }

        ++result.misses;
        result.mem_load_bytes += line_bytes_;  // fetch (also the WA fill for stores)
        if (set.lines.size() == ways_) {
            CacheLine& victim = set.lines.back();
            if (victim.dirty) {
                ++result.writebacks;
                result.mem_store_bytes += line_bytes_;
            }
            set.lookup.erase(victim.tag);
            set.lines.pop_back();
        }
        set.lines.push_front(CacheLine{line_no, kind == AccessKind::store});
        set.lookup.emplace(line_no, set.lines.begin());
    }

    void flush_dirty(TrafficResult& result) {
        for (CacheSet& set : sets_) {
            for (const CacheLine& line : set.lines)
                if (line.dirty) result.mem_store_bytes += line_bytes_;
        }
    }

private:
    std::uint64_t line_bytes_;
    std::uint64_t ways_;
    std::vector<CacheSet> sets_;
    std::uint64_t wc_line_ = 0;
    bool wc_line_valid_ = false;
};

} // namespace

TrafficResult simulate_cache(const AccessTrace& trace, const CacheSimConfig& cfg) {
    validate_cache_config(cfg);

    LruCache cache(cfg);
    TrafficResult result;
    for (const AccessEvent& ev : trace.events) {
        if (ev.size == 0) throw ValidationError("trace event with size 0");
        std::uint64_t first_line = ev.address / cfg.line_bytes;
        std::uint64_t last_line = (ev.address + ev.size - 1) / cfg.line_bytes;
        for (std::uint64_t line = first_line; line <= last_line; ++line)
            cache.access(line, ev.kind, cfg.write_allocate, result);
    }
    cache.flush_dirty(result);
    return result;
}

TrafficRelError compare_to_analytic(const TrafficResult& sim, std::uint64_t v_ld_bytes,
                                    std::uint64_t v_st_bytes, std::uint64_t n_iters) {
    if (n_iters < 1) throw ContractError("comparison needs n_iters >= 1");
    if (v_ld_bytes == 0 || v_st_bytes == 0)
        throw DomainError("analytic volumes must be > 0 for a two-sided comparison");

    auto rel = [](std::uint64_t sim_bytes, std::uint64_t analytic_bytes) {
        double a = static_cast<double>(analytic_bytes);
        return std::abs(static_cast<double>(sim_bytes) - a) / a;
    };
    return TrafficRelError{rel(sim.mem_load_bytes, v_ld_bytes * n_iters),
                           rel(sim.mem_store_bytes, v_st_bytes * n_iters)};
}

AccessTrace parse_trace(std::string_view text) {
    AccessTrace trace;
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

        auto fail = [&](std::string_view why) {
            throw SyntaxError("trace line " + std::to_string(line_no) + ": " +
                              std::string(why) + " in '" + std::string(s) + "'");
        };

        AccessEvent ev;
        if (s.front() == 'L') ev.kind = AccessKind::load;
        else if (s.front() == 'S') ev.kind = AccessKind::store;
        else fail("expected L or S");
        s.remove_prefix(1);
        s = trim(s);

        std::size_t space = s.find(' ');
        if (space == std::string_view::npos) fail("expected '<hex-address> <size>'");
        std::string_view addr_text = trim(s.substr(0, space));
        std::string_view size_text = trim(s.substr(space + 1));
        if (addr_text.starts_with("0x") || addr_text.starts_with("0X"))
            addr_text.remove_prefix(2);

        auto [addr_ptr, addr_ec] = std::from_chars(
            addr_text.data(), addr_text.data() + addr_text.size(), ev.address, 16);
        if (addr_ec != std::errc{} || addr_ptr != addr_text.data() + addr_text.size())
            fail("bad hex address");
        auto size = try_parse_uint64(size_text);
        if (!size || *size == 0 || *size > UINT32_MAX) fail("bad size");
        ev.size = static_cast<std::uint32_t>(*size);
        trace.events.push_back(ev);
    }
    return trace;
}

std::string serialize_trace(const AccessTrace& trace) {
    std::string out;
    char buf[32];
    for (const AccessEvent& ev : trace.events) {
        out += ev.kind == AccessKind::load ? "L 0x" : "S 0x";
        auto r = std::to_chars(buf, buf + sizeof buf, ev.address, 16);
        out.append(buf, r.ptr);
        out += ' ';
        out += std::to_string(ev.size);
        out += '\n';
    }
    return out;
}

} // namespace roofem
