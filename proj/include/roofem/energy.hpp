#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace roofem {

// ---------------------------------------------------------------------------
// Linear power model W = W0 + Wd * x, fitted by ordinary least squares.
// x is the core clock in GHz for the frequency fit; the same machinery
// serves the zero-core fit with x = active cores.
// ---------------------------------------------------------------------------
struct PowerModel {
    double w0_baseline_w = 0.0;        // extrapolation to x = 0
    double wd_dynamic_w_per_ghz = 0.0; // slope (W/GHz, or W/core for the core fit)
    double fit_residual_rms_w = 0.0;
    std::size_t n_points = 0;
};

// Throws ContractError when fewer than two distinct x values are present.
PowerModel fit_power_model(std::span<const std::pair<double, double>> x_power);

// ---------------------------------------------------------------------------
// One measured configuration reduced to what the energy analysis needs.
// work_z counts elements solved (numElem x iterations).
// ---------------------------------------------------------------------------
struct EnergySample {
    std::string kernel_or_app;
    int cores = 0;
    double freq_ghz = 0.0;
    double runtime_s = 0.0;
    double cpu_energy_j = 0.0;
    double dram_energy_j = 0.0;
    std::uint64_t work_z = 0;
};

void validate_energy_sample(const EnergySample& s);  // throws ValidationError

struct EnergyToSolution {
    double total_j = 0.0;
    double per_work_j_per_z = 0.0;
};

EnergyToSolution energy_to_solution(const EnergySample& s);

// Energy-delay product, J*s. Throws DomainError on runtime <= 0 or negative
// energy.
double edp_js(double energy_j, double runtime_s);

// ---------------------------------------------------------------------------
// Z-plot: energy per work (y) against performance in elements per second
// (x). With fixed work, every line through the origin is a locus of
// constant EDP, so the point on the smallest-slope line has the best EDP.
// ---------------------------------------------------------------------------
struct ZPlotPoint {
    double performance_z_per_s = 0.0;
    double energy_j_per_z = 0.0;
    int cores = 0;
    double freq_ghz = 0.0;
    double edp_js_per_z2 = 0.0;  // energy_j_per_z / performance_z_per_s
};

struct ZPlotSeries {
    std::string parameter_label;  // e.g. "2.4 GHz" or "18 cores"
    double parameter_value = 0.0;
    std::vector<ZPlotPoint> points;  // ordered by (cores, freq) ascending
};

enum class ZPlotGroupBy { freq, cores };

// One series per distinct group key, sorted by key. Throws ContractError
// when samples mix different work_z values.
std::vector<ZPlotSeries> build_zplot(std::span<const EnergySample> samples,
                                     ZPlotGroupBy group_by);

enum class Objective { min_edp, min_energy };

std::string_view to_string(Objective o);

struct OperatingPoint {
    int cores = 0;
    double freq_ghz = 0.0;
    double value = 0.0;  // the objective at the optimum (J*s or J)
};

// Exhaustive scan. Ties break toward lower energy, then lower frequency,
// then fewer cores. Throws ContractError on empty input or mixed work_z.
OperatingPoint optimal_operating_point(std::span<const EnergySample> samples,
                                       Objective objective);

} // namespace roofem
