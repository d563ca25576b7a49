#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace roofem {

// ---------------------------------------------------------------------------
// Trace-driven single-level cache simulator. It exists to cross-check the
// declarative byte accounting of kernel models: the same write-allocate and
// reuse rules, derived independently from an actual access stream.
// ---------------------------------------------------------------------------

struct CacheSimConfig {
    std::uint64_t capacity_bytes = 1ull << 20;
    std::uint32_t line_bytes = 64;
    std::uint32_t associativity = 0;  // 0 = fully associative
    bool write_allocate = true;
    // Replacement policy is LRU; no alternatives are modeled.
};

// Throws ValidationError: capacity must be a positive multiple of line_bytes,
// line_bytes a power of two, associativity (when > 0) a divisor of the line
// count.
void validate_cache_config(const CacheSimConfig& cfg);

enum class AccessKind { load, store };

struct AccessEvent {
    std::uint64_t address = 0;  // byte offset
    std::uint32_t size = 0;     // bytes, > 0
    AccessKind kind = AccessKind::load;
};

struct AccessTrace {
    std::vector<AccessEvent> events;
};

enum class TracePattern { stream, gather8, stream_store };

TracePattern trace_pattern_from_string(std::string_view s);  // throws DomainError

// stream:       n_elems sequential loads of elem_bytes starting at offset 0.
// gather8:      per element, eight 4-byte index loads followed by eight
//               indirect elem_bytes loads; requires 8*n_elems indices.
// stream_store: n_elems sequential stores.
AccessTrace generate_trace(TracePattern pattern, std::uint64_t n_elems,
                           std::uint32_t elem_bytes,
                           std::span<const std::uint64_t> index_table = {});

struct TrafficResult {
    std::uint64_t mem_load_bytes = 0;
    std::uint64_t mem_store_bytes = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t writebacks = 0;  // dirty evictions during the run (flush excluded)
};

// LRU simulation. Accounting rules:
//   load miss            -> fetch one line into the cache
//   store hit            -> mark the line dirty
//   store miss, WA on    -> fetch the line, then mark dirty
//   store miss, WA off   -> stream the line to memory; consecutive misses to
//                           the same line coalesce in a one-line write-
//                           combining buffer, so each streamed line counts once
//   dirty eviction       -> one line of store traffic (writeback)
//   end of trace         -> remaining dirty lines flush into store traffic
// An event spanning several lines counts one access per line touched.
TrafficResult simulate_cache(const AccessTrace& trace, const CacheSimConfig& cfg);

struct TrafficRelError {
    double load = 0.0;
    double store = 0.0;
};

// Relative errors of simulated totals against analytic volumes times
// n_iters. Throws DomainError when either analytic volume is zero.
TrafficRelError compare_to_analytic(const TrafficResult& sim, std::uint64_t v_ld_bytes,
                                    std::uint64_t v_st_bytes, std::uint64_t n_iters);

// Text trace format, one event per line: "L|S <hex-address> <size>".
AccessTrace parse_trace(std::string_view text);
std::string serialize_trace(const AccessTrace& trace);

} // namespace roofem
