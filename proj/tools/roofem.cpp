// roofem: Roofline and energy analysis of kernel traffic models against
// machine ceilings and hardware-counter measurements.
//
// Subcommands: table, predict, roofline, validate, zplot, fit-power,
// optimal, oracle. Output is CSV on stdout by default (--format table for
// an aligned view, --out to write a file; .svg output renders a chart for
// roofline and zplot).

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roofem/csv.hpp"
#include "roofem/energy.hpp"
#include "roofem/errors.hpp"
#include "roofem/ingest.hpp"
#include "roofem/kernel_model.hpp"
#include "roofem/machine_model.hpp"
#include "roofem/roofline.hpp"
#include "roofem/svg.hpp"
#include "roofem/text.hpp"
#include "roofem/traffic_oracle.hpp"

using namespace roofem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFail = 1;
constexpr int kExitUsage = 2;

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

struct OutputOptions {
    std::string format = "csv";  // csv | table
    std::string out_path;        // empty = stdout
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format: csv or table")
        ->check(CLI::IsMember({"csv", "table"}));
    cmd->add_option("--out", opts.out_path,
                    "Write output to a file instead of stdout (.svg renders a chart "
                    "for roofline and zplot)");
}

void emit(const std::string& text, const OutputOptions& opts) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw Error("cannot write output file '" + opts.out_path + "'");
    out << text;
}

bool wants_svg(const OutputOptions& opts) {
    return opts.out_path.size() > 4 &&
           opts.out_path.substr(opts.out_path.size() - 4) == ".svg";
}

// Aligned rendering of rows that already exist as strings.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
            width[c] = std::max(width[c], row[c].size());

    std::string out;
    auto append_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out += std::string(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
    };
    append_row(header);
    std::size_t total = 0;
    for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
    out += std::string(total, '-') + '\n';
    for (const auto& row : rows) append_row(row);
    return out;
}

std::string rows_to_csv(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
    std::string out = csv_join(header);
    for (const auto& row : rows) out += csv_join(row);
    return out;
}

std::string emit_rows(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows,
                      const OutputOptions& opts) {
    return opts.format == "table" ? render_table(header, rows) : rows_to_csv(header, rows);
}

std::string num6(double v) { return format_general(v, 6); }

std::string hundredths_to_string(std::int64_t h) {
    std::string sign = h < 0 ? "-" : "";
    if (h < 0) h = -h;
    return sign + std::to_string(h / 100) + "." + (h % 100 < 10 ? "0" : "") +
           std::to_string(h % 100);
}

// ---------------------------------------------------------------------------
// Shared option bundles
// ---------------------------------------------------------------------------

struct MachineArgs {
    std::string machine_file;
    int cores = 0;        // 0 = one full ccNUMA domain
    double freq_ghz = 0;  // 0 = base frequency
    bool simd = false;
    std::string ceiling = "update";
};

void add_machine_options(CLI::App* cmd, MachineArgs& args, bool required = true) {
    auto* opt = cmd->add_option("--machine", args.machine_file, "Machine model file");
    if (required) opt->required();
    cmd->add_option("--cores", args.cores, "Active cores (default: one ccNUMA domain)");
    cmd->add_option("--freq", args.freq_ghz, "Core clock in GHz (default: base frequency)");
    cmd->add_flag("--simd", args.simd, "Use the SIMD peak instead of the scalar peak");
    cmd->add_option("--ceiling", args.ceiling, "Bandwidth ceiling: theoretical|readonly|update")
        ->check(CLI::IsMember({"theoretical", "readonly", "update"}));
}

void resolve_defaults(const MachineModel& m, MachineArgs& args) {
    if (args.cores == 0) args.cores = m.cores_per_domain;
    if (args.freq_ghz == 0) args.freq_ghz = m.base_freq_ghz;
}

ThreadVariant variant_from_string(const std::string& s) {
    return s == "multi" ? ThreadVariant::multi : ThreadVariant::single;
}

void print_notices(const std::vector<std::string>& notices) {
    for (const std::string& n : notices) std::cerr << "note: " << n << "\n";
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int run_table(const std::string& kernel_dir, const std::string& machine_file,
              const std::string& variant, const OutputOptions& opts) {
    if (!machine_file.empty()) load_machine_model_file(machine_file);  // path sanity check

    auto kernels = load_kernel_dir(kernel_dir);
    KernelTable table = kernel_table(kernels, variant_from_string(variant));
    print_notices(table.notices);

    std::vector<std::string> header = {"kernel",       "variant",       "fallback",
                                       "v_load_bytes", "v_store_bytes", "intensity_fpb",
                                       "intensity_2dp", "published",    "mismatch"};
    std::vector<std::vector<std::string>> rows;
    for (const IntensityResult& r : table.rows) {
        rows.push_back({r.kernel, std::string(r.variant == ThreadVariant::multi ? "multi"
                                                                                : "single"),
                        r.used_single_fallback ? "true" : "false",
                        std::to_string(r.v_load_bytes), std::to_string(r.v_store_bytes),
                        num6(r.intensity_fpb),
                        hundredths_to_string(rational_hundredths(r.flops, r.total_bytes)),
                        r.published_value ? format_double(*r.published_value) : "",
                        r.mismatch_flag ? "true" : "false"});
    }
    emit(emit_rows(header, rows, opts), opts);
    return kExitOk;
}

int run_predict(MachineArgs& margs, double intensity_fpb, const std::string& label,
                const OutputOptions& opts) {
    MachineModel m = load_machine_model_file(margs.machine_file);
    resolve_defaults(m, margs);
    RooflinePrediction p =
        predict_performance(intensity_fpb, m, margs.cores, margs.freq_ghz, margs.simd,
                            bandwidth_kind_from_string(margs.ceiling), label);

    if (opts.format == "table") {
        std::string out = num6(p.predicted_gflops) + " Gflop/s " +
                          std::string(to_string(p.bound)) + "-bound\n";
        out += "  intensity  " + num6(p.intensity_fpb) + " F/B\n";
        out += "  ceiling    " + num6(p.ceiling_used_gbs) + " GB/s (" + margs.ceiling + ")\n";
        out += "  peak       " + num6(p.peak_gflops) + " Gflop/s\n";
        out += "  ridge      " + num6(p.ridge_fpb) + " F/B\n";
        emit(out, opts);
        return kExitOk;
    }
    std::vector<std::string> header = {"kernel",       "intensity_fpb",    "ceiling_gbs",
                                       "peak_gflops",  "predicted_gflops", "bound",
                                       "ridge_fpb"};
    std::vector<std::vector<std::string>> rows = {
        {p.kernel, num6(p.intensity_fpb), num6(p.ceiling_used_gbs), num6(p.peak_gflops),
         num6(p.predicted_gflops), std::string(to_string(p.bound)), num6(p.ridge_fpb)}};
    emit(rows_to_csv(header, rows), opts);
    return kExitOk;
}

int run_roofline(MachineArgs& margs, const std::string& kernel_dir,
                 const std::string& measurements_file, const std::string& variant,
                 const OutputOptions& opts) {
    MachineModel m = load_machine_model_file(margs.machine_file);
    resolve_defaults(m, margs);
    BandwidthKind kind = bandwidth_kind_from_string(margs.ceiling);

    auto kernels = load_kernel_dir(kernel_dir);
    KernelTable table = kernel_table(kernels, variant_from_string(variant));
    print_notices(table.notices);

    std::vector<RooflinePrediction> predictions;
    for (const IntensityResult& r : table.rows)
        predictions.push_back(predict_performance(r.intensity_fpb, m, margs.cores,
                                                  margs.freq_ghz, margs.simd, kind, r.kernel));

    std::vector<MeasuredPoint> measured;
    if (!measurements_file.empty()) {
        for (const MeasurementRecord& r : parse_measurements_file(measurements_file)) {
            if (r.load_bytes + r.store_bytes == 0 || r.flops == 0) {
                std::cerr << "note: record '" << r.kernel
                          << "' has no traffic or no flops; skipped in chart\n";
                continue;
            }
            measured.push_back({r.kernel, measured_intensity(r),
                                static_cast<double>(r.flops) / r.runtime_s / 1e9});
        }
    }

    ChartDataset dataset = roofline_chart(m, predictions, measured);
    if (wants_svg(opts)) {
        emit(render_roofline_svg(dataset, "Roofline: " + m.name), opts);
        return kExitOk;
    }
    std::ostringstream csv;
    write_chart_csv(csv, dataset);
    if (opts.format == "table") {
        std::vector<std::string> header = {"series", "x_fpb", "y_gflops", "marker", "flag"};
        std::vector<std::vector<std::string>> rows;
        for (const ChartRow& r : dataset.rows)
            rows.push_back({r.series, num6(r.x_fpb), num6(r.y_gflops), r.marker, r.flag});
        emit(render_table(header, rows), opts);
    } else {
        emit(csv.str(), opts);
    }
    return kExitOk;
}

int run_validate(MachineArgs& margs, const std::string& kernel_dir,
                 const std::string& measurements_file, const std::string& thresholds_text,
                 const OutputOptions& opts) {
    MachineModel m = load_machine_model_file(margs.machine_file);
    auto kernels = load_kernel_dir(kernel_dir);
    auto records = parse_measurements_file(measurements_file);

    ValidationThresholds thresholds;
    if (!thresholds_text.empty()) {
        std::size_t comma = thresholds_text.find(',');
        auto pass = try_parse_double(thresholds_text.substr(0, comma));
        auto warn = comma == std::string::npos
                        ? std::nullopt
                        : try_parse_double(thresholds_text.substr(comma + 1));
        if (!pass || !warn || !(*pass <= *warn))
            throw Error("--thresholds expects 'pass,warn' with pass <= warn, got '" +
                        thresholds_text + "'");
        thresholds.pass_max = *pass;
        thresholds.warn_max = *warn;
    }

    ValidationReport report =
        validate(records, kernels, m, bandwidth_kind_from_string(margs.ceiling), thresholds);

    std::vector<std::string> header = {
        "kernel",          "cores",          "measured_intensity", "predicted_intensity",
        "rel_error",       "measured_bw_gbs", "ceiling_bw_gbs",    "bw_utilization",
        "above_roof",      "verdict",        "note"};
    std::vector<std::vector<std::string>> rows;
    for (const ValidationRow& r : report.rows) {
        rows.push_back({r.kernel, std::to_string(r.cores),
                        r.measured_intensity ? num6(*r.measured_intensity) : "",
                        r.predicted_intensity ? num6(*r.predicted_intensity) : "",
                        r.rel_error ? num6(*r.rel_error) : "", num6(r.measured_bw_gbs),
                        num6(r.ceiling_bw_gbs), num6(r.bw_utilization),
                        r.above_roof ? "true" : "false", std::string(to_string(r.verdict)),
                        r.note});
    }
    emit(emit_rows(header, rows, opts), opts);
    return report.any_fail() ? kExitValidationFail : kExitOk;
}

std::vector<MeasurementRecord> filter_records(std::vector<MeasurementRecord> records,
                                              const std::string& kernel, int cores,
                                              double freq_ghz) {
    std::vector<MeasurementRecord> out;
    for (MeasurementRecord& r : records) {
        if (!kernel.empty() && r.kernel != kernel) continue;
        if (cores > 0 && r.cores != cores) continue;
        if (freq_ghz > 0 && std::abs(r.freq_mhz / 1000.0 - freq_ghz) > 1e-9) continue;
        out.push_back(std::move(r));
    }
    return out;
}

int run_zplot(const std::string& measurements_file, const std::string& group_by,
              const std::string& kernel, const OutputOptions& opts) {
    auto records = filter_records(parse_measurements_file(measurements_file), kernel, 0, 0);
    auto samples = to_energy_samples(records);
    auto series = build_zplot(samples, group_by == "cores" ? ZPlotGroupBy::cores
                                                           : ZPlotGroupBy::freq);

    if (wants_svg(opts)) {
        emit(render_zplot_svg(series, kernel.empty() ? "Energy z-plot" : "Energy z-plot: " + kernel),
             opts);
        return kExitOk;
    }
    std::vector<std::string> header = {"series", "x_perf",   "y_energy_per_work",
                                       "cores",  "freq_ghz", "edp"};
    std::vector<std::vector<std::string>> rows;
    for (const ZPlotSeries& s : series)
        for (const ZPlotPoint& p : s.points)
            rows.push_back({s.parameter_label, num6(p.performance_z_per_s),
                            num6(p.energy_j_per_z), std::to_string(p.cores),
                            format_double(p.freq_ghz), num6(p.edp_js_per_z2)});
    emit(emit_rows(header, rows, opts), opts);
    return kExitOk;
}

int run_fit_power(const std::string& measurements_file, const std::string& predictor,
                  const std::string& kernel, int cores, double freq_ghz,
                  const OutputOptions& opts) {
    auto records =
        filter_records(parse_measurements_file(measurements_file), kernel, cores, freq_ghz);
    std::vector<std::pair<double, double>> points;
    for (const MeasurementRecord& r : records) {
        double power = (r.cpu_energy_j + r.dram_energy_j) / r.runtime_s;
        double x = predictor == "cores" ? static_cast<double>(r.cores) : r.freq_mhz / 1000.0;
        points.emplace_back(x, power);
    }
    PowerModel model = fit_power_model(points);

    if (opts.format == "table") {
        std::string unit = predictor == "cores" ? "W/core" : "W/GHz";
        std::string out;
        out += "W = W0 + Wd * " + std::string(predictor == "cores" ? "cores" : "f") + "\n";
        out += "  W0        " + num6(model.w0_baseline_w) + " W\n";
        out += "  Wd        " + num6(model.wd_dynamic_w_per_ghz) + " " + unit + "\n";
        out += "  residual  " + num6(model.fit_residual_rms_w) + " W rms\n";
        out += "  points    " + std::to_string(model.n_points) + "\n";
        emit(out, opts);
        return kExitOk;
    }
    std::vector<std::string> header = {"predictor", "w0_baseline_w", "wd_dynamic_w_per_ghz",
                                       "fit_residual_rms_w", "n_points"};
    std::vector<std::vector<std::string>> rows = {
        {predictor, num6(model.w0_baseline_w), num6(model.wd_dynamic_w_per_ghz),
         num6(model.fit_residual_rms_w), std::to_string(model.n_points)}};
    emit(rows_to_csv(header, rows), opts);
    return kExitOk;
}

int run_optimal(const std::string& measurements_file, const std::string& objective,
                const std::string& kernel, const OutputOptions& opts) {
    auto records = filter_records(parse_measurements_file(measurements_file), kernel, 0, 0);
    auto samples = to_energy_samples(records);
    Objective obj = objective == "min_energy" ? Objective::min_energy : Objective::min_edp;
    OperatingPoint point = optimal_operating_point(samples, obj);

    if (opts.format == "table") {
        std::string unit = obj == Objective::min_edp ? "J*s" : "J";
        emit("optimum at " + std::to_string(point.cores) + " cores, " +
                 format_double(point.freq_ghz) + " GHz (" + std::string(to_string(obj)) +
                 " = " + num6(point.value) + " " + unit + ")\n",
             opts);
        return kExitOk;
    }
    std::vector<std::string> header = {"objective", "cores", "freq_ghz", "value"};
    std::vector<std::vector<std::string>> rows = {{std::string(to_string(obj)),
                                                   std::to_string(point.cores),
                                                   format_double(point.freq_ghz),
                                                   num6(point.value)}};
    emit(rows_to_csv(header, rows), opts);
    return kExitOk;
}

struct OracleArgs {
    std::string pattern;
    std::string trace_file;
    std::uint64_t n_elems = 0;
    std::uint32_t elem_bytes = 8;
    std::uint64_t capacity = 1ull << 20;
    std::uint32_t line_bytes = 64;
    std::uint32_t associativity = 0;
    bool no_write_allocate = false;
    std::uint64_t seed = 1;
    std::uint64_t iters = 0;     // 0 = n_elems for patterns, 1 for traces
    double analytic_load = -1;   // per-iteration bytes; <0 = derive from pattern
    double analytic_store = -1;
};

int run_oracle(const OracleArgs& args, const OutputOptions& opts) {
    CacheSimConfig cfg;
    cfg.capacity_bytes = args.capacity;
    cfg.line_bytes = args.line_bytes;
    cfg.associativity = args.associativity;
    cfg.write_allocate = !args.no_write_allocate;

    AccessTrace trace;
    double analytic_load = args.analytic_load;
    double analytic_store = args.analytic_store;
    std::uint64_t iters = 0;
    std::string source;

    if (!args.trace_file.empty()) {
        std::ifstream in(args.trace_file);
        if (!in) throw Error("cannot open trace file '" + args.trace_file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        trace = parse_trace(buf.str());
        source = "trace:" + args.trace_file;
        if (analytic_load >= 0 || analytic_store >= 0)
            iters = args.iters > 0 ? args.iters : 1;
    } else {
        if (args.pattern.empty())
            throw Error("oracle needs either --pattern or --trace");
        if (args.n_elems == 0) throw Error("oracle needs --n >= 1 with --pattern");
        TracePattern pattern = trace_pattern_from_string(args.pattern);
        std::vector<std::uint64_t> index_table;
        if (pattern == TracePattern::gather8) {
            // Deterministic pseudo-random gather targets.
            std::mt19937_64 rng(args.seed);
            index_table.resize(8 * args.n_elems);
            for (auto& idx : index_table) idx = rng() % args.n_elems;
        }
        trace = generate_trace(pattern, args.n_elems, args.elem_bytes, index_table);
        source = args.pattern;
        iters = args.iters > 0 ? args.iters : args.n_elems;

        // Analytic per-iteration volumes implied by the pattern, with the
        // same write-allocate convention as kernel models.
        if (analytic_load < 0 && analytic_store < 0) {
            switch (pattern) {
                case TracePattern::stream:
                    analytic_load = args.elem_bytes;
                    analytic_store = 0;
                    break;
                case TracePattern::stream_store:
                    analytic_store = args.elem_bytes;
                    analytic_load = cfg.write_allocate ? args.elem_bytes : 0;
                    break;
                case TracePattern::gather8:
                    analytic_load = 32.0 + 8.0 * args.elem_bytes;
                    analytic_store = 0;
                    break;
            }
        }
    }

    TrafficResult result = simulate_cache(trace, cfg);

    auto rel_err = [&](std::uint64_t sim, double analytic) -> std::string {
        if (analytic <= 0 || iters == 0) return "";
        double expected = analytic * static_cast<double>(iters);
        return num6(std::abs(static_cast<double>(sim) - expected) / expected);
    };
    std::string err_load = rel_err(result.mem_load_bytes, analytic_load);
    std::string err_store = rel_err(result.mem_store_bytes, analytic_store);

    if (opts.format == "table") {
        std::string out;
        out += "source           " + source + "\n";
        out += "events           " + std::to_string(trace.events.size()) + "\n";
        out += "mem_load_bytes   " + std::to_string(result.mem_load_bytes) + "\n";
        out += "mem_store_bytes  " + std::to_string(result.mem_store_bytes) + "\n";
        out += "hits             " + std::to_string(result.hits) + "\n";
        out += "misses           " + std::to_string(result.misses) + "\n";
        out += "writebacks       " + std::to_string(result.writebacks) + "\n";
        if (!err_load.empty()) out += "rel_err_load     " + err_load + "\n";
        if (!err_store.empty()) out += "rel_err_store    " + err_store + "\n";
        emit(out, opts);
        return kExitOk;
    }
    std::vector<std::string> header = {"source", "events",     "mem_load_bytes",
                                       "mem_store_bytes", "hits", "misses",
                                       "writebacks",      "rel_err_load", "rel_err_store"};
    std::vector<std::vector<std::string>> rows = {
        {source, std::to_string(trace.events.size()), std::to_string(result.mem_load_bytes),
         std::to_string(result.mem_store_bytes), std::to_string(result.hits),
         std::to_string(result.misses), std::to_string(result.writebacks), err_load,
         err_store}};
    emit(rows_to_csv(header, rows), opts);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roofline and energy analysis for kernel traffic models"};
    app.require_subcommand(1);

    // table
    std::string table_kernels, table_machine, table_variant = "single";
    OutputOptions table_out;
    auto* table_cmd = app.add_subcommand("table", "Computational-intensity table");
    table_cmd->add_option("--kernels", table_kernels, "Directory of .kernel files")->required();
    table_cmd->add_option("--machine", table_machine, "Machine file (checked, not used)");
    table_cmd->add_option("--variant", table_variant, "single or multi")
        ->check(CLI::IsMember({"single", "multi"}));
    add_output_options(table_cmd, table_out);

    // predict
    MachineArgs predict_machine;
    double predict_intensity = 0;
    std::string predict_label;
    OutputOptions predict_out;
    auto* predict_cmd = app.add_subcommand("predict", "Roofline prediction for one intensity");
    add_machine_options(predict_cmd, predict_machine);
    predict_cmd->add_option("--intensity", predict_intensity, "Computational intensity in F/B")
        ->required();
    predict_cmd->add_option("--label", predict_label, "Kernel label for the output row");
    add_output_options(predict_cmd, predict_out);

    // roofline
    MachineArgs roofline_machine;
    std::string roofline_kernels, roofline_measurements, roofline_variant = "single";
    OutputOptions roofline_out;
    auto* roofline_cmd = app.add_subcommand("roofline", "Roof chart dataset (CSV or SVG)");
    add_machine_options(roofline_cmd, roofline_machine);
    roofline_cmd->add_option("--kernels", roofline_kernels, "Directory of .kernel files")
        ->required();
    roofline_cmd->add_option("--measurements", roofline_measurements,
                             "Measurements CSV for filled-circle points");
    roofline_cmd->add_option("--variant", roofline_variant, "single or multi")
        ->check(CLI::IsMember({"single", "multi"}));
    add_output_options(roofline_cmd, roofline_out);

    // validate
    MachineArgs validate_machine;
    std::string validate_kernels, validate_measurements, validate_thresholds;
    OutputOptions validate_out;
    auto* validate_cmd =
        app.add_subcommand("validate", "Validate measurements against kernel models");
    add_machine_options(validate_cmd, validate_machine);
    validate_cmd->add_option("--kernels", validate_kernels, "Directory of .kernel files")
        ->required();
    validate_cmd->add_option("--measurements", validate_measurements, "Measurements CSV")
        ->required();
    validate_cmd->add_option("--thresholds", validate_thresholds,
                             "Verdict thresholds 'pass,warn' (default 0.15,0.30)");
    add_output_options(validate_cmd, validate_out);

    // zplot
    std::string zplot_measurements, zplot_group = "freq", zplot_kernel;
    OutputOptions zplot_out;
    auto* zplot_cmd = app.add_subcommand("zplot", "Energy-vs-performance series (CSV or SVG)");
    zplot_cmd->add_option("--measurements", zplot_measurements, "Measurements CSV")->required();
    zplot_cmd->add_option("--group-by", zplot_group, "Series parameter: freq or cores")
        ->check(CLI::IsMember({"freq", "cores"}));
    zplot_cmd->add_option("--kernel", zplot_kernel, "Only rows for this kernel");
    add_output_options(zplot_cmd, zplot_out);

    // fit-power
    std::string fit_measurements, fit_predictor = "freq", fit_kernel;
    int fit_cores = 0;
    double fit_freq = 0;
    OutputOptions fit_out;
    auto* fit_cmd = app.add_subcommand("fit-power", "Linear power model W = W0 + Wd*x");
    fit_cmd->add_option("--measurements", fit_measurements, "Measurements CSV")->required();
    fit_cmd->add_option("--predictor", fit_predictor, "x variable: freq or cores")
        ->check(CLI::IsMember({"freq", "cores"}));
    fit_cmd->add_option("--kernel", fit_kernel, "Only rows for this kernel");
    fit_cmd->add_option("--cores", fit_cores, "Only rows with this core count");
    fit_cmd->add_option("--freq", fit_freq, "Only rows at this core clock (GHz)");
    add_output_options(fit_cmd, fit_out);

    // optimal
    std::string optimal_measurements, optimal_objective = "min_edp", optimal_kernel;
    OutputOptions optimal_out;
    auto* optimal_cmd =
        app.add_subcommand("optimal", "Best operating point by EDP or energy");
    optimal_cmd->add_option("--measurements", optimal_measurements, "Measurements CSV")
        ->required();
    optimal_cmd->add_option("--objective", optimal_objective, "min_edp or min_energy")
        ->check(CLI::IsMember({"min_edp", "min_energy"}));
    optimal_cmd->add_option("--kernel", optimal_kernel, "Only rows for this kernel");
    add_output_options(optimal_cmd, optimal_out);

    // oracle
    OracleArgs oracle_args;
    OutputOptions oracle_out;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "Cache-simulator cross-check of traffic accounting");
    oracle_cmd->add_option("--pattern", oracle_args.pattern,
                           "Access pattern: stream, gather8, or stream_store");
    oracle_cmd->add_option("--trace", oracle_args.trace_file, "Trace file (L|S <hex> <size>)");
    oracle_cmd->add_option("--n", oracle_args.n_elems, "Elements (= iterations) to generate");
    oracle_cmd->add_option("--elem-bytes", oracle_args.elem_bytes, "Element size in bytes");
    oracle_cmd->add_option("--capacity", oracle_args.capacity, "Cache capacity in bytes");
    oracle_cmd->add_option("--line", oracle_args.line_bytes, "Cache line size in bytes");
    oracle_cmd->add_option("--assoc", oracle_args.associativity,
                           "Associativity (0 = fully associative)");
    oracle_cmd->add_flag("--no-write-allocate", oracle_args.no_write_allocate,
                         "Stream stores past the cache instead of allocating");
    oracle_cmd->add_option("--seed", oracle_args.seed, "Seed for gather8 index generation");
    oracle_cmd->add_option("--iters", oracle_args.iters,
                           "Iterations behind the analytic volumes (default: --n, or 1 "
                           "for traces)");
    oracle_cmd->add_option("--analytic-load", oracle_args.analytic_load,
                           "Analytic load bytes per iteration (overrides pattern default)");
    oracle_cmd->add_option("--analytic-store", oracle_args.analytic_store,
                           "Analytic store bytes per iteration (overrides pattern default)");
    add_output_options(oracle_cmd, oracle_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\nRun with --help for usage.\n";
        return kExitUsage;
    }

    try {
        if (table_cmd->parsed())
            return run_table(table_kernels, table_machine, table_variant, table_out);
        if (predict_cmd->parsed())
            return run_predict(predict_machine, predict_intensity, predict_label, predict_out);
        if (roofline_cmd->parsed())
            return run_roofline(roofline_machine, roofline_kernels, roofline_measurements,
                                roofline_variant, roofline_out);
        if (validate_cmd->parsed())
            return run_validate(validate_machine, validate_kernels, validate_measurements,
                                validate_thresholds, validate_out);
        if (zplot_cmd->parsed())
            return run_zplot(zplot_measurements, zplot_group, zplot_kernel, zplot_out);
        if (fit_cmd->parsed())
            return run_fit_power(fit_measurements, fit_predictor, fit_kernel, fit_cores,
                                 fit_freq, fit_out);
        if (optimal_cmd->parsed())
            return run_optimal(optimal_measurements, optimal_objective, optimal_kernel,
                               optimal_out);
        if (oracle_cmd->parsed()) return run_oracle(oracle_args, oracle_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
