#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nematic/timeseries.hpp"

namespace nematic::harness {

enum class PlotKind { linear, semilog_y, log_log };

std::string_view to_string(PlotKind k) noexcept;

/// Data-to-pixel map of one plot: x_px = left + (X - x_lo) / (x_hi - x_lo) * (right - left),
/// y_px = bottom - (Y - y_lo) / (y_hi - y_lo) * (bottom - top), where X and Y
/// are log10 of the data on logarithmic axes.
struct PlotFrame {
    static constexpr double width = 640.0;
    static constexpr double height = 400.0;
    static constexpr double left = 70.0;
    static constexpr double right = 620.0;
    static constexpr double top = 30.0;
    static constexpr double bottom = 330.0;

    PlotKind kind = PlotKind::linear;
    double x_lo = 0.0;
    double x_hi = 1.0;
    double y_lo = 0.0;
    double y_hi = 1.0;

    [[nodiscard]] double px(double x) const;
    [[nodiscard]] double py(double y) const;
};

struct Plot {
    std::string svg;
    PlotFrame frame;
    /// Points left out: non-finite, or non-positive on a log axis.
    std::size_t dropped = 0;
};

/// One polyline per value column against the key column. Identical input
/// gives identical bytes. Throws SeriesError on an empty series or when no
/// point survives.
Plot emit_plot(const TimeSeries& series, PlotKind kind, std::string_view title = {});

}  // namespace nematic::harness
