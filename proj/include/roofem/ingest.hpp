#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roofem/energy.hpp"
#include "roofem/kernel_model.hpp"
#include "roofem/machine_model.hpp"

namespace roofem {

// ---------------------------------------------------------------------------
// Normalized hardware-counter export: one row per measured configuration.
// Adapters from specific counter tools are one-line scripts away; this is
// the toolkit's own schema, not any tool's native dump.
// ---------------------------------------------------------------------------
struct MeasurementRecord {
    std::string region;
    std::string kernel;
    int cores = 0;
    double freq_mhz = 0.0;
    std::optional<double> uncore_mhz;
    double runtime_s = 0.0;
    std::uint64_t flops = 0;
    std::uint64_t load_bytes = 0;
    std::uint64_t store_bytes = 0;
    double cpu_energy_j = 0.0;
    double dram_energy_j = 0.0;
    std::uint64_t work_z = 0;
    std::optional<std::uint64_t> instructions;  // carried through, never modeled

    bool operator==(const MeasurementRecord&) const = default;
};

// CSV with a mandatory header row. Columns may appear in any order;
// uncore_mhz and instructions are optional (absent column or empty cell).
// Throws SchemaError for header problems, SyntaxError for unparsable cells
// (naming row and column), ValidationError for invariant violations.
std::vector<MeasurementRecord> parse_measurements(std::string_view csv_text);
std::vector<MeasurementRecord> parse_measurements_file(const std::filesystem::path& path);

// Canonical column order; parse(serialize(parse(x))) == parse(x).
std::string serialize_measurements(std::span<const MeasurementRecord> records);

// flops / (load_bytes + store_bytes). Throws DomainError on zero traffic.
double measured_intensity(const MeasurementRecord& r);

std::vector<EnergySample> to_energy_samples(std::span<const MeasurementRecord> records);

// ---------------------------------------------------------------------------
// Measurement-vs-model validation, the per-kernel audit of intensities and
// bandwidth utilization.
// ---------------------------------------------------------------------------
struct ValidationThresholds {
    double pass_max = 0.15;  // rel_error <= pass_max  -> pass
    double warn_max = 0.30;  // rel_error <= warn_max  -> warn, else fail
};

enum class Verdict { pass, warn, fail };

std::string_view to_string(Verdict v);

struct ValidationRow {
    std::string kernel;
    int cores = 0;
    std::optional<double> measured_intensity;
    std::optional<double> predicted_intensity;
    std::optional<double> rel_error;
    double measured_bw_gbs = 0.0;
    double ceiling_bw_gbs = 0.0;     // chosen ceiling scaled to domains spanned
    double bw_utilization = 0.0;
    bool above_roof = false;         // utilization > 1
    Verdict verdict = Verdict::warn;
    std::string note;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool any_fail() const;
};

// One row per record, in input order. Records naming unknown kernels become
// warn rows with empty model fields. Multi-core records compare against the
// kernel's multi-threaded model when it exists, otherwise against the
// single-threaded one (noted in the row).
ValidationReport validate(std::span<const MeasurementRecord> records,
                          const std::vector<KernelSpec>& kernels, const MachineModel& m,
                          BandwidthKind ceiling_kind = BandwidthKind::update,
                          ValidationThresholds thresholds = {});

} // namespace roofem
