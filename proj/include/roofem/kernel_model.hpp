#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roofem {

// ---------------------------------------------------------------------------
// Declarative per-iteration traffic model of a kernel. One "iteration" is
// one pass of the outer element loop; volumes are bytes moved to and from
// main memory per iteration.
// ---------------------------------------------------------------------------

enum class StreamDirection { load, store };
enum class ThreadVariant { single, multi };

struct TrafficStream {
    std::string label;
    StreamDirection direction = StreamDirection::load;
    std::uint64_t elements_per_iter = 0;
    std::uint32_t element_bytes = 8;  // one of 1, 2, 4, 8
    bool write_allocate = false;      // stores only: miss fetches the line first
    bool cached = false;              // true: served from cache, no memory traffic
};

struct KernelSpec {
    std::string name;
    int hotspot = 0;  // presentation order; 0 = unordered
    std::uint64_t flops_per_iter = 0;
    std::vector<TrafficStream> streams_single;
    // Present only when the kernel has a distinct multi-threaded traffic
    // model; otherwise requests for the multi variant fall back to single.
    std::optional<std::vector<TrafficStream>> streams_multi;
    std::optional<double> published_intensity;        // reference value, single-threaded
    std::optional<double> published_intensity_multi;  // reference value, multi-threaded
};

struct TrafficVolumes {
    std::uint64_t load_bytes = 0;   // V_LD, includes write-allocate line fills
    std::uint64_t store_bytes = 0;  // V_ST
};

struct IntensityResult {
    std::string kernel;
    std::uint64_t v_load_bytes = 0;
    std::uint64_t v_store_bytes = 0;
    double intensity_fpb = 0.0;  // flops / (v_load + v_store)
    // Exact rational pieces of intensity_fpb, for display at any precision.
    std::uint64_t flops = 0;
    std::uint64_t total_bytes = 0;
    std::optional<double> published_value;
    bool mismatch_flag = false;  // round(I, 2dp) differs from published by > 0.01
    ThreadVariant variant = ThreadVariant::single;
    bool used_single_fallback = false;  // multi requested, spec has no multi streams
};

// Throws ValidationError on invariant violations (write_allocate on a load
// stream, element_bytes not in {1,2,4,8}).
void validate_stream(const TrafficStream& s);
void validate_kernel_spec(const KernelSpec& k);

// Store bytes of non-cached store streams; load bytes of non-cached load
// streams plus the write-allocate side of store streams.
TrafficVolumes traffic_volumes(const KernelSpec& k, ThreadVariant variant);

// flops per byte. Throws DomainError on zero traffic (pure compute kernel).
double intensity(std::uint64_t n_f, std::uint64_t v_ld, std::uint64_t v_st);

// Exact rational rounding of num/den to hundredths (half away from zero).
// Used for the published-value audit so the comparison is FP-noise free.
std::int64_t rational_hundredths(std::uint64_t num, std::uint64_t den);

// Nearest-hundredths representation of a published decimal value.
std::int64_t published_hundredths(double value);

struct KernelTable {
    std::vector<IntensityResult> rows;
    std::vector<std::string> notices;  // skipped or fallback kernels
};

// One row per kernel that has traffic for the requested variant. Kernels
// without an explicit multi model fall back to the single model (with a
// notice); kernels with zero traffic are skipped (with a notice).
KernelTable kernel_table(const std::vector<KernelSpec>& kernels, ThreadVariant variant);

// Kernel file format: preamble keys (name, hotspot, flops_per_iter,
// published_intensity[_multi]) followed by repeated [stream] sections with
// TrafficStream fields plus `variant = single|multi|both` (default single).
KernelSpec load_kernel_spec(std::string_view source);
KernelSpec load_kernel_spec_file(const std::filesystem::path& path);

// Loads every *.kernel file in a directory, ordered by (hotspot, name).
std::vector<KernelSpec> load_kernel_dir(const std::filesystem::path& dir);

} // namespace roofem
