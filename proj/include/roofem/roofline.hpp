#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "roofem/machine_model.hpp"

namespace roofem {

enum class Boundedness { memory, compute };

std::string_view to_string(Boundedness b);

// ---------------------------------------------------------------------------
// P = min(P_peak, I x b_s) applied to one intensity on one machine
// configuration. The bandwidth ceiling is a per-domain resource and scales
// with the number of domains the core count spans; the peak scales with
// cores and frequency.
// ---------------------------------------------------------------------------
struct RooflinePrediction {
    std::string kernel;
    double intensity_fpb = 0.0;
    double ceiling_used_gbs = 0.0;   // b_s after domain scaling
    double peak_gflops = 0.0;        // P_peak
    double predicted_gflops = 0.0;   // min(peak, I * b_s)
    Boundedness bound = Boundedness::memory;
    double ridge_fpb = 0.0;          // peak / b_s
};

// Throws DomainError for non-positive intensity and propagates machine
// model range errors. Intensity exactly at the ridge classifies as
// compute-bound.
RooflinePrediction predict_performance(double intensity_fpb, const MachineModel& m, int cores,
                                       double freq_ghz, bool simd, BandwidthKind ceiling_kind,
                                       std::string kernel_label = {});

// ---------------------------------------------------------------------------
// Chart dataset: ceilings plus prediction/measurement points, ready for CSV
// or SVG emission. Ceilings always describe one ccNUMA domain at base
// frequency with the scalar peak, matching how roof charts are read.
// ---------------------------------------------------------------------------
struct ChartRow {
    std::string series;  // bw_update | bw_readonly | peak_scalar | kernel name
    double x_fpb = 0.0;
    double y_gflops = 0.0;
    std::string marker;  // line | empty_circle | filled_circle
    std::string flag;    // "" | above_roof
};

struct MeasuredPoint {
    std::string kernel;
    double intensity_fpb = 0.0;
    double gflops = 0.0;
};

struct ChartDataset {
    std::vector<ChartRow> rows;
    // Log-log plotting extents and ceiling values, for the SVG renderer.
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    double peak_gflops = 0.0;
    double bw_update_gbs = 0.0;
    double bw_readonly_gbs = 0.0;
};

ChartDataset roofline_chart(const MachineModel& m,
                            const std::vector<RooflinePrediction>& predictions,
                            const std::vector<MeasuredPoint>& measured = {});

void write_chart_csv(std::ostream& out, const ChartDataset& dataset);

} // namespace roofem
