#pragma once

#include <span>
#include <string>

#include "roofem/energy.hpp"
#include "roofem/roofline.hpp"

namespace roofem {

// Static SVG renderings of the chart datasets. Output is plain text and
// deterministic: the same dataset always yields the same bytes.

// Log-log roof chart with labeled bandwidth band and peak ceiling.
std::string render_roofline_svg(const ChartDataset& dataset, std::string_view title);

// Energy-vs-performance scatter with one polyline per series and dashed
// constant-EDP guide lines through the origin.
std::string render_zplot_svg(std::span<const ZPlotSeries> series, std::string_view title);

} // namespace roofem
