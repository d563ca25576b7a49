#pragma once

// Test-only reference implementations, kept deliberately independent of the
// library code paths they check: different formulas, different data
// structures, no shared helpers.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "roofem/energy.hpp"
#include "roofem/traffic_oracle.hpp"

namespace refmodel {

// Least squares through the raw (uncentered) normal equations.
struct Line {
    double intercept;
    double slope;
};

inline Line ols_fit(const std::vector<std::pair<double, double>>& xy) {
    double n = static_cast<double>(xy.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    return {intercept, slope};
}

// Plain-vector LRU cache: linear search, explicit recency reordering, and
// separate tallies for every traffic source.
struct ReferenceTraffic {
    std::uint64_t load_miss_lines = 0;
    std::uint64_t wa_store_miss_lines = 0;
    std::uint64_t nonwa_store_miss_lines = 0;
    std::uint64_t writeback_lines = 0;
    std::uint64_t flushed_dirty_lines = 0;
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
};

inline ReferenceTraffic reference_simulate(const roofem::AccessTrace& trace,
                                           const roofem::CacheSimConfig& cfg) {
    struct Entry {
        std::uint64_t line;
        bool dirty;
    };
    std::uint64_t total_lines = cfg.capacity_bytes / cfg.line_bytes;
    std::uint64_t ways = cfg.associativity == 0 ? total_lines : cfg.associativity;
    std::uint64_t n_sets = cfg.associativity == 0 ? 1 : total_lines / cfg.associativity;
    std::vector<std::vector<Entry>> sets(n_sets);  // back = most recent

    ReferenceTraffic t;
    bool wc_valid = false;
    std::uint64_t wc_line = 0;

    auto touch = [&](std::uint64_t line, bool is_store) {
        auto& set = sets[line % n_sets];
        auto it = std::find_if(set.begin(), set.end(),
                               [&](const Entry& e) { return e.line == line; });
        if (it != set.end()) {
            Entry e = *it;
            e.dirty = e.dirty || is_store;
            set.erase(it);
            set.push_back(e);
            ++t.hits;
            return;
        }
        if (is_store && !cfg.write_allocate) {
            if (wc_valid && wc_line == line) {
                ++t.hits;
            } else {
                ++t.misses;
                ++t.nonwa_store_miss_lines;
                wc_line = line;
                wc_valid = true;
            }
            return;
        }
        ++t.misses;
        if (is_store) ++t.wa_store_miss_lines;
        else ++t.load_miss_lines;
        if (set.size() == ways) {
            if (set.front().dirty) ++t.writeback_lines;
            set.erase(set.begin());
        }
        set.push_back(Entry{line, is_store});
    };

    for (const roofem::AccessEvent& ev : trace.events) {
        std::uint64_t first = ev.address / cfg.line_bytes;
        std::uint64_t last = (ev.address + ev.size - 1) / cfg.line_bytes;
        for (std::uint64_t line = first; line <= last; ++line)
            touch(line, ev.kind == roofem::AccessKind::store);
    }
    for (const auto& set : sets)
        for (const auto& e : set)
            if (e.dirty) ++t.flushed_dirty_lines;
    return t;
}

// Exhaustive operating-point scan via stable sort on the full tie-break key.
inline roofem::OperatingPoint brute_force_optimal(std::vector<roofem::EnergySample> samples,
                                                  roofem::Objective objective) {
    auto key = [&](const roofem::EnergySample& s) {
        double energy = s.cpu_energy_j + s.dram_energy_j;
        double value =
            objective == roofem::Objective::min_edp ? energy * s.runtime_s : energy;
        return std::make_tuple(value, energy, s.freq_ghz, s.cores);
    };
    std::stable_sort(samples.begin(), samples.end(),
                     [&](const auto& a, const auto& b) { return key(a) < key(b); });
    const auto& best = samples.front();
    double energy = best.cpu_energy_j + best.dram_energy_j;
    double value =
        objective == roofem::Objective::min_edp ? energy * best.runtime_s : energy;
    return {best.cores, best.freq_ghz, value};
}

} // namespace refmodel
