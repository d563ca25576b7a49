#include "roofem/roofline.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "roofem/csv.hpp"
#include "roofem/errors.hpp"
#include "roofem/text.hpp"

namespace roofem {

std::string_view to_string(Boundedness b) {
    return b == Boundedness::memory ? "memory" : "compute";
}

RooflinePrediction predict_performance(double intensity_fpb, const MachineModel& m, int cores,
                                       double freq_ghz, bool simd, BandwidthKind ceiling_kind,
                                       std::string kernel_label) {
    if (!(intensity_fpb > 0.0))
        throw DomainError("intensity must be > 0 F/B");

    RooflinePrediction p;
    p.kernel = std::move(kernel_label);
    p.intensity_fpb = intensity_fpb;
    p.peak_gflops = effective_peak_gflops(m, cores, freq_ghz, simd);
    p.ceiling_used_gbs =
        bandwidth_ceiling_gbs(m, ceiling_kind) * static_cast<double>(m.domains_spanned(cores));
    p.ridge_fpb = p.peak_gflops / p.ceiling_used_gbs;
    double bandwidth_bound = intensity_fpb * p.ceiling_used_gbs;
    p.predicted_gflops = std::min(p.peak_gflops, bandwidth_bound);
    p.bound = intensity_fpb < p.ridge_fpb ? Boundedness::memory : Boundedness::compute;
    return p;
}

namespace {

// Extents stay positive so the log-log mapping is always well defined.
void extend_range(double v, double& lo, double& hi) {
    if (!(v > 0.0)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
}

} // namespace

ChartDataset roofline_chart(const MachineModel& m,
                            const std::vector<RooflinePrediction>& predictions,
                            const std::vector<MeasuredPoint>& measured) {
    ChartDataset d;
    d.peak_gflops =
        effective_peak_gflops(m, m.cores_per_domain, m.base_freq_ghz, /*simd=*/false);
    d.bw_update_gbs = m.bw_update_gbs;
    d.bw_readonly_gbs = m.bw_readonly_gbs;

    double ridge_update = d.peak_gflops / d.bw_update_gbs;
    double ridge_readonly = d.peak_gflops / d.bw_readonly_gbs;

    // Plot extents: cover all points and both ridges with half a decade of
    // margin; defaults give a sensible empty chart.
    double x_lo = ridge_readonly, x_hi = ridge_update;
    for (const auto& p : predictions) extend_range(p.intensity_fpb, x_lo, x_hi);
    for (const auto& p : measured) extend_range(p.intensity_fpb, x_lo, x_hi);
    d.x_min = x_lo / 3.0;
    d.x_max = x_hi * 3.0;
    d.y_max = d.peak_gflops * 3.0;
    d.y_min = d.x_min * d.bw_update_gbs / 3.0;
    for (const auto& p : predictions)
        if (p.predicted_gflops > 0.0) d.y_min = std::min(d.y_min, p.predicted_gflops / 3.0);
    for (const auto& p : measured)
        if (p.gflops > 0.0) d.y_min = std::min(d.y_min, p.gflops / 3.0);

    // Bandwidth band: each ceiling runs from the left edge up to where it
    // meets the peak; the peak line starts at the leftmost intersection.
    d.rows.push_back({"bw_update", d.x_min, d.x_min * d.bw_update_gbs, "line", ""});
    d.rows.push_back({"bw_update", ridge_update, d.peak_gflops, "line", ""});
    d.rows.push_back({"bw_readonly", d.x_min, d.x_min * d.bw_readonly_gbs, "line", ""});
    d.rows.push_back({"bw_readonly", ridge_readonly, d.peak_gflops, "line", ""});
    d.rows.push_back({"peak_scalar", ridge_readonly, d.peak_gflops, "line", ""});
    d.rows.push_back({"peak_scalar", d.x_max, d.peak_gflops, "line", ""});

    for (const auto& p : predictions)
        d.rows.push_back({p.kernel, p.intensity_fpb, p.predicted_gflops, "empty_circle", ""});

    for (const auto& p : measured) {
        double roof = std::min(d.peak_gflops, p.intensity_fpb * d.bw_update_gbs);
        bool above = p.gflops > roof * (1.0 + 1e-9);
        d.rows.push_back(
            {p.kernel, p.intensity_fpb, p.gflops, "filled_circle", above ? "above_roof" : ""});
    }
    return d;
}

void write_chart_csv(std::ostream& out, const ChartDataset& dataset) {
    out << "series,x_fpb,y_gflops,marker,flag\n";
    for (const ChartRow& r : dataset.rows) {
        out << csv_join({r.series, format_double(r.x_fpb), format_double(r.y_gflops), r.marker,
                         r.flag});
    }
}

} // namespace roofem
