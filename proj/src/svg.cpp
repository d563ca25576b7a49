#include "roofem/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "roofem/text.hpp"

namespace roofem {

namespace {

constexpr int kWidth = 760;
constexpr int kHeight = 560;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 30;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) { return format_general(v, 6); }

struct SvgBuilder {
    std::string body;

    void line(double x1, double y1, double x2, double y2, const std::string& style) {
        body += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
                "\" y2=\"" + num(y2) + "\" " + style + "/>\n";
    }
    void circle(double cx, double cy, double r, const std::string& style) {
        body += "<circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(r) + "\" " +
                style + "/>\n";
    }
    void text(double x, double y, const std::string& t, const std::string& style) {
        body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" " + style + ">" + t +
                "</text>\n";
    }
    void polyline(const std::string& points, const std::string& style) {
        body += "<polyline points=\"" + points + "\" fill=\"none\" " + style + "/>\n";
    }

    std::string finish(std::string_view title) {
        std::string out;
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
               "\" height=\"" + std::to_string(kHeight) + "\" font-family=\"sans-serif\">\n";
        out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        out += "<text x=\"" + std::to_string(kWidth / 2) +
               "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + std::string(title) +
               "</text>\n";
        out += body;
        out += "</svg>\n";
        return out;
    }
};

const std::string kAxisStyle = "stroke=\"black\" stroke-width=\"1\"";
const std::string kGridStyle = "stroke=\"#dddddd\" stroke-width=\"1\"";
const std::string kTickText = "font-size=\"11\" text-anchor=\"middle\"";
const std::string kTickTextRight = "font-size=\"11\" text-anchor=\"end\"";

} // namespace

std::string render_roofline_svg(const ChartDataset& d, std::string_view title) {
    const double lx0 = std::log10(d.x_min), lx1 = std::log10(d.x_max);
    const double ly0 = std::log10(d.y_min), ly1 = std::log10(d.y_max);
    auto px = [&](double x) {
        return kMarginLeft + (std::log10(x) - lx0) / (lx1 - lx0) *
                                 (kWidth - kMarginLeft - kMarginRight);
    };
    auto py = [&](double y) {
        return kHeight - kMarginBottom - (std::log10(y) - ly0) / (ly1 - ly0) *
                                             (kHeight - kMarginTop - kMarginBottom);
    };

    SvgBuilder svg;

    // Decade grid and tick labels.
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        double x = std::pow(10.0, e);
        svg.line(px(x), py(d.y_min), px(x), py(d.y_max), kGridStyle);
        svg.text(px(x), kHeight - kMarginBottom + 16, "1e" + std::to_string(e), kTickText);
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        double y = std::pow(10.0, e);
        svg.line(px(d.x_min), py(y), px(d.x_max), py(y), kGridStyle);
        svg.text(kMarginLeft - 6, py(y) + 4, "1e" + std::to_string(e), kTickTextRight);
    }
    svg.line(kMarginLeft, py(d.y_min), px(d.x_max), py(d.y_min), kAxisStyle);
    svg.line(kMarginLeft, py(d.y_min), kMarginLeft, py(d.y_max), kAxisStyle);
    svg.text((kMarginLeft + kWidth - kMarginRight) / 2.0, kHeight - 14,
             "computational intensity [F/B]", kTickText);
    svg.text(16, kMarginTop - 10, "performance [Gflop/s]", "font-size=\"11\"");

    // Ceiling segments, then points, in dataset order. Colors are assigned
    // per series name in order of first appearance.
    std::map<std::string, std::string> colors;
    auto color_of = [&](const std::string& series) -> std::string {
        auto it = colors.find(series);
        if (it == colors.end()) {
            std::string c = kPalette[colors.size() % std::size(kPalette)];
            it = colors.emplace(series, c).first;
        }
        return it->second;
    };

    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        const ChartRow& r = d.rows[i];
        if (r.marker != "line") continue;
        if (i + 1 < d.rows.size() && d.rows[i + 1].series == r.series &&
            d.rows[i + 1].marker == "line") {
            const ChartRow& r2 = d.rows[i + 1];
            bool is_ceiling = r.series.rfind("bw_", 0) == 0 || r.series == "peak_scalar";
            std::string style = is_ceiling ? "stroke=\"black\" stroke-width=\"2\""
                                           : "stroke=\"" + color_of(r.series) +
                                                 "\" stroke-width=\"1.5\"";
            svg.line(px(r.x_fpb), py(r.y_gflops), px(r2.x_fpb), py(r2.y_gflops), style);
            svg.text(px(r2.x_fpb) - 4, py(r2.y_gflops) - 6, r.series,
                     "font-size=\"11\" text-anchor=\"end\"");
            ++i;
        }
    }
    for (const ChartRow& r : d.rows) {
        if (r.marker == "line") continue;
        std::string c = color_of(r.series);
        if (r.marker == "empty_circle") {
            svg.circle(px(r.x_fpb), py(r.y_gflops), 5,
                       "fill=\"white\" stroke=\"" + c + "\" stroke-width=\"1.5\"");
        } else {
            svg.circle(px(r.x_fpb), py(r.y_gflops), 5, "fill=\"" + c + "\" stroke=\"none\"");
        }
        if (!r.flag.empty())
            svg.text(px(r.x_fpb), py(r.y_gflops) - 9, r.flag,
                     "font-size=\"10\" fill=\"#d62728\" text-anchor=\"middle\"");
    }

    // Legend: one entry per point series.
    double ly = kMarginTop + 8;
    for (const auto& [series, color] : colors) {
        if (series.rfind("bw_", 0) == 0 || series == "peak_scalar") continue;
        svg.circle(kMarginLeft + 12, ly - 4, 4, "fill=\"" + color + "\"");
        svg.text(kMarginLeft + 22, ly, series, "font-size=\"11\"");
        ly += 16;
    }

    return svg.finish(title);
}

std::string render_zplot_svg(std::span<const ZPlotSeries> series, std::string_view title) {
    double x_max = 0.0, y_max = 0.0;
    double best_edp = 0.0;
    bool have_points = false;
    for (const ZPlotSeries& s : series) {
        for (const ZPlotPoint& p : s.points) {
            x_max = std::max(x_max, p.performance_z_per_s);
            y_max = std::max(y_max, p.energy_j_per_z);
            if (!have_points || p.edp_js_per_z2 < best_edp) best_edp = p.edp_js_per_z2;
            have_points = true;
        }
    }
    if (!have_points) {
        x_max = 1.0;
        y_max = 1.0;
    }
    x_max *= 1.1;
    y_max *= 1.15;

    auto px = [&](double x) {
        return kMarginLeft + x / x_max * (kWidth - kMarginLeft - kMarginRight);
    };
    auto py = [&](double y) {
        return kHeight - kMarginBottom - y / y_max * (kHeight - kMarginTop - kMarginBottom);
    };

    SvgBuilder svg;

    for (int t = 0; t <= 5; ++t) {
        double x = x_max * t / 5.0;
        double y = y_max * t / 5.0;
        svg.line(px(x), py(0), px(x), py(y_max), kGridStyle);
        svg.line(px(0), py(y), px(x_max), py(y), kGridStyle);
        svg.text(px(x), kHeight - kMarginBottom + 16, format_general(x, 3), kTickText);
        svg.text(kMarginLeft - 6, py(y) + 4, format_general(y, 3), kTickTextRight);
    }
    svg.line(px(0), py(0), px(x_max), py(0), kAxisStyle);
    svg.line(px(0), py(0), px(0), py(y_max), kAxisStyle);
    svg.text((kMarginLeft + kWidth - kMarginRight) / 2.0, kHeight - 14, "performance [z/s]",
             kTickText);
    svg.text(16, kMarginTop - 10, "energy [J/z]", "font-size=\"11\"");

    // Constant-EDP guides through the origin: y = edp * x. The best point
    // sits on the lowest line.
    if (have_points && best_edp > 0.0) {
        for (double scale : {1.0, 2.0, 4.0}) {
            double slope = best_edp * scale;
            double x_end = std::min(x_max, y_max / slope);
            svg.line(px(0), py(0), px(x_end), py(slope * x_end),
                     "stroke=\"#aaaaaa\" stroke-width=\"1\" stroke-dasharray=\"5,4\"");
        }
        svg.text(px(x_max * 0.98), py(best_edp * x_max * 0.98) - 6, "min EDP",
                 "font-size=\"10\" fill=\"#555555\" text-anchor=\"end\"");
    }

    double legend_y = kMarginTop + 8;
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::string color = kPalette[i % std::size(kPalette)];
        std::string points;
        for (const ZPlotPoint& p : series[i].points) {
            if (!points.empty()) points += ' ';
            points += num(px(p.performance_z_per_s)) + "," + num(py(p.energy_j_per_z));
        }
        if (!points.empty())
            svg.polyline(points, "stroke=\"" + color + "\" stroke-width=\"1.5\"");
        for (const ZPlotPoint& p : series[i].points)
            svg.circle(px(p.performance_z_per_s), py(p.energy_j_per_z), 4,
                       "fill=\"" + color + "\"");
        svg.circle(kWidth - 180, legend_y - 4, 4, "fill=\"" + color + "\"");
        svg.text(kWidth - 170, legend_y, series[i].parameter_label, "font-size=\"11\"");
        legend_y += 16;
    }

    return svg.finish(title);
}

} // namespace roofem
