#include "roofem/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "roofem/errors.hpp"
#include "roofem/text.hpp"

namespace roofem {

PowerModel fit_power_model(std::span<const std::pair<double, double>> x_power) {
    if (x_power.size() < 2)
        throw ContractError("power fit needs at least 2 samples, got " +
                            std::to_string(x_power.size()));

    const double n = static_cast<double>(x_power.size());
    double x_mean = 0.0, y_mean = 0.0;
    for (const auto& [x, y] : x_power) {
        x_mean += x;
        y_mean += y;
    }
    x_mean /= n;
    y_mean /= n;

    // Centered normal equations keep the fit well conditioned.
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : x_power) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    if (sxx == 0.0)
        throw ContractError("degenerate power fit: all samples share one x value");

    PowerModel model;
    model.wd_dynamic_w_per_ghz = sxy / sxx;
    model.w0_baseline_w = y_mean - model.wd_dynamic_w_per_ghz * x_mean;
    model.n_points = x_power.size();

    double ss_res = 0.0;
    for (const auto& [x, y] : x_power) {
        double r = y - (model.w0_baseline_w + model.wd_dynamic_w_per_ghz * x);
        ss_res += r * r;
    }
    model.fit_residual_rms_w = std::sqrt(ss_res / n);
    return model;
}

void validate_energy_sample(const EnergySample& s) {
    const std::string where = "energy sample '" + s.kernel_or_app + "'";
    if (!(s.runtime_s > 0.0)) throw ValidationError(where + ": field 'runtime_s' must be > 0");
    if (s.cpu_energy_j < 0.0 || s.dram_energy_j < 0.0)
        throw ValidationError(where + ": energies must be >= 0");
    if (s.work_z == 0) throw ValidationError(where + ": field 'work_z' must be > 0");
}

EnergyToSolution energy_to_solution(const EnergySample& s) {
    validate_energy_sample(s);
    EnergyToSolution e;
    e.total_j = s.cpu_energy_j + s.dram_energy_j;
    e.per_work_j_per_z = e.total_j / static_cast<double>(s.work_z);
    return e;
}

double edp_js(double energy_j, double runtime_s) {
    if (!(runtime_s > 0.0)) throw DomainError("EDP requires runtime > 0");
    if (energy_j < 0.0) throw DomainError("EDP requires energy >= 0");
    return energy_j * runtime_s;
}

std::string_view to_string(Objective o) {
    return o == Objective::min_edp ? "min_edp" : "min_energy";
}

namespace {

void require_uniform_work(std::span<const EnergySample> samples) {
    for (const EnergySample& s : samples) {
        validate_energy_sample(s);
        if (s.work_z != samples.front().work_z)
            throw ContractError("samples mix different work_z values (" +
                                std::to_string(samples.front().work_z) + " vs " +
                                std::to_string(s.work_z) +
                                "); normalize per work before plotting");
    }
}

} // namespace

std::vector<ZPlotSeries> build_zplot(std::span<const EnergySample> samples,
                                     ZPlotGroupBy group_by) {
    require_uniform_work(samples);

    std::map<double, ZPlotSeries> by_key;
    for (const EnergySample& s : samples) {
        double key = group_by == ZPlotGroupBy::freq ? s.freq_ghz : static_cast<double>(s.cores);
        ZPlotSeries& series = by_key[key];
        if (series.points.empty()) {
            series.parameter_value = key;
            series.parameter_label = group_by == ZPlotGroupBy::freq
                                         ? format_double(key) + " GHz"
                                         : std::to_string(s.cores) + " cores";
        }
        EnergyToSolution e = energy_to_solution(s);
        ZPlotPoint p;
        p.performance_z_per_s = static_cast<double>(s.work_z) / s.runtime_s;
        p.energy_j_per_z = e.per_work_j_per_z;
        p.cores = s.cores;
        p.freq_ghz = s.freq_ghz;
        p.edp_js_per_z2 = p.energy_j_per_z / p.performance_z_per_s;
        series.points.push_back(p);
    }

    std::vector<ZPlotSeries> result;
    result.reserve(by_key.size());
    for (auto& [key, series] : by_key) {
        std::sort(series.points.begin(), series.points.end(),
                  [](const ZPlotPoint& a, const ZPlotPoint& b) {
                      if (a.cores != b.cores) return a.cores < b.cores;
                      return a.freq_ghz < b.freq_ghz;
                  });
        result.push_back(std::move(series));
    }
    return result;
}

OperatingPoint optimal_operating_point(std::span<const EnergySample> samples,
                                       Objective objective) {
    if (samples.empty()) throw ContractError("operating-point search needs at least 1 sample");
    require_uniform_work(samples);

    const EnergySample* best = nullptr;
    double best_value = 0.0, best_energy = 0.0;
    for (const EnergySample& s : samples) {
        double energy = energy_to_solution(s).total_j;
        double value = objective == Objective::min_edp ? edp_js(energy, s.runtime_s) : energy;
        bool better = false;
        if (!best) {
            better = true;
        } else if (value != best_value) {
            better = value < best_value;
        } else if (energy != best_energy) {
            better = energy < best_energy;
        } else if (s.freq_ghz != best->freq_ghz) {
            better = s.freq_ghz < best->freq_ghz;
        } else if (s.cores != best->cores) {
            better = s.cores < best->cores;
        }
        if (better) {
            best = &s;
            best_value = value;
            best_energy = energy;
        }
    }
    return OperatingPoint{best->cores, best->freq_ghz, best_value};
}

} // namespace roofem
