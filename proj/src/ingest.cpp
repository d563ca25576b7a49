#include "roofem/ingest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>

#include "roofem/csv.hpp"
#include "roofem/errors.hpp"
#include "roofem/text.hpp"

namespace roofem {

namespace {

constexpr std::array<std::string_view, 13> kColumns = {
    "region",       "kernel",     "cores",       "freq_mhz",      "uncore_mhz",
    "runtime_s",    "flops",      "load_bytes",  "store_bytes",   "cpu_energy_j",
    "dram_energy_j", "work_z",    "instructions"};

constexpr std::array<std::string_view, 2> kOptionalColumns = {"uncore_mhz", "instructions"};

bool is_optional_column(std::string_view name) {
    return std::find(kOptionalColumns.begin(), kOptionalColumns.end(), name) !=
           kOptionalColumns.end();
}

[[noreturn]] void cell_error(int line, std::string_view column, std::string_view expected,
                             std::string_view got) {
    throw SyntaxError("row at line " + std::to_string(line) + ", column '" +
                      std::string(column) + "': expected " + std::string(expected) + ", got '" +
                      std::string(got) + "'");
}

class RowReader {
public:
    RowReader(const std::vector<std::string>& cells,
              const std::array<int, kColumns.size()>& index, int line)
        : cells_(cells), index_(index), line_(line) {}

    std::string_view raw(std::size_t col) const {
        int i = index_[col];
        return i < 0 ? std::string_view{} : std::string_view(cells_[static_cast<std::size_t>(i)]);
    }

    std::string text(std::size_t col) const { return std::string(raw(col)); }

    double number(std::size_t col) const {
        auto v = try_parse_double(raw(col));
        if (!v) cell_error(line_, kColumns[col], "a number", raw(col));
        return *v;
    }

    std::uint64_t count(std::size_t col) const {
        auto v = try_parse_uint64(raw(col));
        if (!v) cell_error(line_, kColumns[col], "a non-negative integer", raw(col));
        return *v;
    }

    std::optional<double> optional_number(std::size_t col) const {
        std::string_view s = trim(raw(col));
        if (s.empty()) return std::nullopt;
        auto v = try_parse_double(s);
        if (!v) cell_error(line_, kColumns[col], "a number or empty", s);
        return v;
    }

    std::optional<std::uint64_t> optional_count(std::size_t col) const {
        std::string_view s = trim(raw(col));
        if (s.empty()) return std::nullopt;
        auto v = try_parse_uint64(s);
        if (!v) cell_error(line_, kColumns[col], "a non-negative integer or empty", s);
        return v;
    }

private:
    const std::vector<std::string>& cells_;
    const std::array<int, kColumns.size()>& index_;
    int line_;
};

void validate_record(const MeasurementRecord& r, int line) {
    const std::string where = "row at line " + std::to_string(line);
    if (!(r.runtime_s > 0.0))
        throw ValidationError(where + ": field 'runtime_s' must be > 0");
    if (r.cores < 1) throw ValidationError(where + ": field 'cores' must be >= 1");
    if (!(r.freq_mhz > 0.0)) throw ValidationError(where + ": field 'freq_mhz' must be > 0");
    if (r.cpu_energy_j < 0.0 || r.dram_energy_j < 0.0)
        throw ValidationError(where + ": energies must be >= 0");
    if (r.work_z == 0) throw ValidationError(where + ": field 'work_z' must be > 0");
}

} // namespace

std::vector<MeasurementRecord> parse_measurements(std::string_view csv_text) {
    CsvTable table = parse_csv(csv_text);
    if (table.header.empty()) throw SchemaError("measurements: missing header row");

    std::array<int, kColumns.size()> index;
    index.fill(-1);
    for (std::size_t h = 0; h < table.header.size(); ++h) {
        std::string_view name = trim(table.header[h]);
        auto it = std::find(kColumns.begin(), kColumns.end(), name);
        if (it == kColumns.end())
            throw SchemaError("measurements: unknown column '" + std::string(name) + "'");
        std::size_t col = static_cast<std::size_t>(it - kColumns.begin());
        if (index[col] >= 0)
            throw SchemaError("measurements: duplicate column '" + std::string(name) + "'");
        index[col] = static_cast<int>(h);
    }
    for (std::size_t col = 0; col < kColumns.size(); ++col) {
        if (index[col] < 0 && !is_optional_column(kColumns[col]))
            throw SchemaError("measurements: missing mandatory column '" +
                              std::string(kColumns[col]) + "'");
    }

    std::vector<MeasurementRecord> records;
    records.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& cells = table.rows[i];
        int line = table.row_lines[i];
        if (cells.size() != table.header.size())
            throw SyntaxError("row at line " + std::to_string(line) + ": expected " +
                              std::to_string(table.header.size()) + " cells, got " +
                              std::to_string(cells.size()));
        RowReader row(cells, index, line);
        MeasurementRecord r;
        r.region = row.text(0);
        r.kernel = row.text(1);
        r.cores = static_cast<int>(row.count(2));
        r.freq_mhz = row.number(3);
        r.uncore_mhz = index[4] >= 0 ? row.optional_number(4) : std::nullopt;
        r.runtime_s = row.number(5);
        r.flops = row.count(6);
        r.load_bytes = row.count(7);
        r.store_bytes = row.count(8);
        r.cpu_energy_j = row.number(9);
        r.dram_energy_j = row.number(10);
        r.work_z = row.count(11);
        r.instructions = index[12] >= 0 ? row.optional_count(12) : std::nullopt;
        validate_record(r, line);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<MeasurementRecord> parse_measurements_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open measurements file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_measurements(buf.str());
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

std::string serialize_measurements(std::span<const MeasurementRecord> records) {
    std::string out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) {
        if (i) out += ',';
        out += kColumns[i];
    }
    out += '\n';
    for (const MeasurementRecord& r : records) {
        out += csv_join({r.region, r.kernel, std::to_string(r.cores), format_double(r.freq_mhz),
                         r.uncore_mhz ? format_double(*r.uncore_mhz) : "",
                         format_double(r.runtime_s), std::to_string(r.flops),
                         std::to_string(r.load_bytes), std::to_string(r.store_bytes),
                         format_double(r.cpu_energy_j), format_double(r.dram_energy_j),
                         std::to_string(r.work_z),
                         r.instructions ? std::to_string(*r.instructions) : ""});
    }
    return out;
}

double measured_intensity(const MeasurementRecord& r) {
    return intensity(r.flops, r.load_bytes, r.store_bytes);
}

std::vector<EnergySample> to_energy_samples(std::span<const MeasurementRecord> records) {
    std::vector<EnergySample> samples;
    samples.reserve(records.size());
    for (const MeasurementRecord& r : records) {
        EnergySample s;
        s.kernel_or_app = r.kernel;
        s.cores = r.cores;
        s.freq_ghz = r.freq_mhz / 1000.0;
        s.runtime_s = r.runtime_s;
        s.cpu_energy_j = r.cpu_energy_j;
        s.dram_energy_j = r.dram_energy_j;
        s.work_z = r.work_z;
        samples.push_back(std::move(s));
    }
    return samples;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::warn: return "warn";
        case Verdict::fail: return "fail";
    }
    return "?";
}

bool ValidationReport::any_fail() const {
    return std::any_of(rows.begin(), rows.end(),
                       [](const ValidationRow& r) { return r.verdict == Verdict::fail; });
}

ValidationReport validate(std::span<const MeasurementRecord> records,
                          const std::vector<KernelSpec>& kernels, const MachineModel& m,
                          BandwidthKind ceiling_kind, ValidationThresholds thresholds) {
    ValidationReport report;
    report.rows.reserve(records.size());

    for (const MeasurementRecord& r : records) {
        ValidationRow row;
        row.kernel = r.kernel;
        row.cores = r.cores;

        double total_bytes =
            static_cast<double>(r.load_bytes) + static_cast<double>(r.store_bytes);
        row.measured_bw_gbs = total_bytes / r.runtime_s / 1e9;
        row.ceiling_bw_gbs = bandwidth_ceiling_gbs(m, ceiling_kind) *
                             static_cast<double>(m.domains_spanned(r.cores));
        row.bw_utilization = row.measured_bw_gbs / row.ceiling_bw_gbs;
        row.above_roof = row.bw_utilization > 1.0;

        const KernelSpec* spec = nullptr;
        for (const KernelSpec& k : kernels) {
            if (k.name == r.kernel) {
                spec = &k;
                break;
            }
        }

        if (total_bytes == 0.0) {
            row.verdict = Verdict::warn;
            row.note = "no memory traffic; intensity undefined";
        } else if (!spec) {
            row.measured_intensity = measured_intensity(r);
            row.verdict = Verdict::warn;
            row.note = "unknown kernel; no model to compare against";
        } else {
            row.measured_intensity = measured_intensity(r);
            ThreadVariant variant =
                r.cores > 1 ? ThreadVariant::multi : ThreadVariant::single;
            bool fallback = variant == ThreadVariant::multi && !spec->streams_multi;
            TrafficVolumes v = traffic_volumes(*spec, variant);
            if (v.load_bytes + v.store_bytes == 0) {
                row.verdict = Verdict::warn;
                row.note = "model predicts no memory traffic";
            } else {
                row.predicted_intensity =
                    intensity(spec->flops_per_iter, v.load_bytes, v.store_bytes);
                row.rel_error = std::abs(*row.measured_intensity - *row.predicted_intensity) /
                                *row.predicted_intensity;
                if (*row.rel_error <= thresholds.pass_max) row.verdict = Verdict::pass;
                else if (*row.rel_error <= thresholds.warn_max) row.verdict = Verdict::warn;
                else row.verdict = Verdict::fail;
                if (fallback) row.note = "single-thread model (no multi-thread streams)";
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace roofem
