#include "roofem/machine_model.hpp"

#include <fstream>
#include <sstream>

#include "roofem/errors.hpp"
#include "roofem/keyval.hpp"
#include "roofem/text.hpp"

namespace roofem {

BandwidthKind bandwidth_kind_from_string(std::string_view s) {
    if (s == "theoretical") return BandwidthKind::theoretical;
    if (s == "readonly") return BandwidthKind::readonly;
    if (s == "update") return BandwidthKind::update;
    throw DomainError("unknown bandwidth ceiling kind '" + std::string(s) +
                      "' (expected theoretical, readonly, or update)");
}

std::string_view to_string(BandwidthKind kind) {
    switch (kind) {
        case BandwidthKind::theoretical: return "theoretical";
        case BandwidthKind::readonly: return "readonly";
        case BandwidthKind::update: return "update";
    }
    return "?";
}

namespace {

bool is_power_of_two(std::int64_t v) {
    return v > 0 && (v & (v - 1)) == 0;
}

} // namespace

void validate_machine_model(const MachineModel& m) {
    if (m.name.empty())
        throw ValidationError("machine model: field 'name' must be non-empty");
    if (m.ccnuma_domains_per_node < 1)
        throw ValidationError("machine model: field 'ccnuma_domains_per_node' must be >= 1");
    if (m.cores_per_domain < 1)
        throw ValidationError("machine model: field 'cores_per_domain' must be >= 1");
    if (!(m.base_freq_ghz > 0.0))
        throw ValidationError("machine model: field 'base_freq_ghz' must be > 0");
    if (m.flops_per_cycle_scalar < 1)
        throw ValidationError("machine model: field 'flops_per_cycle_scalar' must be >= 1");
    if (m.flops_per_cycle_simd < 1)
        throw ValidationError("machine model: field 'flops_per_cycle_simd' must be >= 1");
    if (!(m.bw_update_gbs > 0.0))
        throw ValidationError("machine model: field 'bw_update_gbs' must be > 0");
    if (m.bw_update_gbs > m.bw_readonly_gbs)
        throw ValidationError(
            "machine model: field 'bw_update_gbs' must not exceed 'bw_readonly_gbs'");
    if (m.bw_readonly_gbs > m.bw_theoretical_gbs)
        throw ValidationError(
            "machine model: field 'bw_readonly_gbs' must not exceed 'bw_theoretical_gbs'");
    if (!(m.tdp_socket_w >= 0.0))
        throw ValidationError("machine model: field 'tdp_socket_w' must be >= 0");
    if (!is_power_of_two(m.cache_line_bytes))
        throw ValidationError("machine model: field 'cache_line_bytes' must be a power of two");
    if (m.llc_bytes_per_domain < 0)
        throw ValidationError("machine model: field 'llc_bytes_per_domain' must be >= 0");
}

MachineModel load_machine_model(std::string_view source) {
    KeyValDocument doc = parse_keyval(source);
    if (doc.sections.size() == 1 && doc.sections[0].entries.empty())
        throw SyntaxError("machine model: empty input");
    if (doc.sections.size() > 1)
        throw SyntaxError("line " + std::to_string(doc.sections[1].line) +
                          ": machine model files do not use sections");

    FieldReader fields(doc.sections[0], "machine model");
    MachineModel m;
    m.name = fields.require_string("name");
    m.ccnuma_domains_per_node = fields.require_int("ccnuma_domains_per_node");
    m.cores_per_domain = fields.require_int("cores_per_domain");
    m.base_freq_ghz = fields.require_double("base_freq_ghz");
    m.flops_per_cycle_scalar = fields.require_int("flops_per_cycle_scalar");
    m.flops_per_cycle_simd = fields.require_int("flops_per_cycle_simd");
    m.bw_theoretical_gbs = fields.require_double("bw_theoretical_gbs");
    m.bw_readonly_gbs = fields.require_double("bw_readonly_gbs");
    m.bw_update_gbs = fields.require_double("bw_update_gbs");
    m.tdp_socket_w = fields.require_double("tdp_socket_w");
    m.cache_line_bytes = static_cast<std::int64_t>(fields.require_uint64("cache_line_bytes"));
    m.llc_bytes_per_domain =
        static_cast<std::int64_t>(fields.require_uint64("llc_bytes_per_domain"));
    fields.finish();

    validate_machine_model(m);
    return m;
}

MachineModel load_machine_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open machine file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_machine_model(buf.str());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

std::string serialize_machine_model(const MachineModel& m) {
    std::string out;
    out += "name = " + m.name + "\n";
    out += "ccnuma_domains_per_node = " + std::to_string(m.ccnuma_domains_per_node) + "\n";
    out += "cores_per_domain = " + std::to_string(m.cores_per_domain) + "\n";
    out += "base_freq_ghz = " + format_double(m.base_freq_ghz) + "\n";
    out += "flops_per_cycle_scalar = " + std::to_string(m.flops_per_cycle_scalar) + "\n";
    out += "flops_per_cycle_simd = " + std::to_string(m.flops_per_cycle_simd) + "\n";
    out += "bw_theoretical_gbs = " + format_double(m.bw_theoretical_gbs) + "\n";
    out += "bw_readonly_gbs = " + format_double(m.bw_readonly_gbs) + "\n";
    out += "bw_update_gbs = " + format_double(m.bw_update_gbs) + "\n";
    out += "tdp_socket_w = " + format_double(m.tdp_socket_w) + "\n";
    out += "cache_line_bytes = " + std::to_string(m.cache_line_bytes) + "\n";
    out += "llc_bytes_per_domain = " + std::to_string(m.llc_bytes_per_domain) + "\n";
    return out;
}

double effective_peak_gflops(const MachineModel& m, int cores, double freq_ghz, bool simd) {
    if (cores < 1 || cores > m.total_cores())
        throw DomainError("core count " + std::to_string(cores) + " outside [1, " +
                          std::to_string(m.total_cores()) + "] for machine '" + m.name + "'");
    if (!(freq_ghz > 0.0))
        throw DomainError("frequency must be > 0 GHz");
    int flops_per_cycle = simd ? m.flops_per_cycle_simd : m.flops_per_cycle_scalar;
    return static_cast<double>(cores) * freq_ghz * static_cast<double>(flops_per_cycle);
}

double bandwidth_ceiling_gbs(const MachineModel& m, BandwidthKind kind) {
    switch (kind) {
        case BandwidthKind::theoretical: return m.bw_theoretical_gbs;
        case BandwidthKind::readonly: return m.bw_readonly_gbs;
        case BandwidthKind::update: return m.bw_update_gbs;
    }
    throw DomainError("invalid bandwidth ceiling kind");
}

} // namespace roofem
