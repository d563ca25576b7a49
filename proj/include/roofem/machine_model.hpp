#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace roofem {

// ---------------------------------------------------------------------------
// Ceiling description of one machine. Bandwidth figures are per ccNUMA
// domain, the fundamental scaling unit; node-level ceilings are domain
// values times the domain count.
// ---------------------------------------------------------------------------
struct MachineModel {
    std::string name;
    int ccnuma_domains_per_node = 0;
    int cores_per_domain = 0;
    double base_freq_ghz = 0.0;
    int flops_per_cycle_scalar = 0;
    int flops_per_cycle_simd = 0;
    double bw_theoretical_gbs = 0.0;  // GB/s, per ccNUMA domain
    double bw_readonly_gbs = 0.0;     // GB/s, best-case benchmark
    double bw_update_gbs = 0.0;       // GB/s, read-modify-write benchmark
    double tdp_socket_w = 0.0;        // W
    std::int64_t cache_line_bytes = 0;
    std::int64_t llc_bytes_per_domain = 0;

    int total_cores() const { return ccnuma_domains_per_node * cores_per_domain; }

    // Number of ccNUMA domains a core count spans under compact pinning.
    int domains_spanned(int cores) const {
        return (cores + cores_per_domain - 1) / cores_per_domain;
    }
};

enum class BandwidthKind { theoretical, readonly, update };

BandwidthKind bandwidth_kind_from_string(std::string_view s);  // throws DomainError
std::string_view to_string(BandwidthKind kind);

// Parses flat key-value text; every MachineModel field is required and
// unknown keys are rejected. Throws SyntaxError / ValidationError.
MachineModel load_machine_model(std::string_view source);
MachineModel load_machine_model_file(const std::filesystem::path& path);

// Canonical key order; load_machine_model(serialize_machine_model(m)) == m.
std::string serialize_machine_model(const MachineModel& m);

// Throws ValidationError naming the offending field.
void validate_machine_model(const MachineModel& m);

// cores x freq x flops/cycle, in Gflop/s. Throws DomainError when cores is
// outside [1, total_cores()] or freq_ghz <= 0.
double effective_peak_gflops(const MachineModel& m, int cores, double freq_ghz, bool simd);

double bandwidth_ceiling_gbs(const MachineModel& m, BandwidthKind kind);

} // namespace roofem
