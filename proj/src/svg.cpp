#include "nematic/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

namespace nematic::harness {

namespace {

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-300 ? 0.0 : v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

bool log_x(PlotKind k) { return k == PlotKind::log_log; }
bool log_y(PlotKind k) { return k != PlotKind::linear; }

// Value on the axis scale, or NaN when it cannot be drawn.
double axis_value(double v, bool log_axis) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
    if (!log_axis) return v;
    return v > 0.0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN();
}

void widen(double& lo, double& hi) {
    if (hi > lo) return;
    const double pad = lo == 0.0 ? 0.5 : 0.05 * std::abs(lo);
    lo -= pad;
    hi += pad;
}

// Multiples of 1, 2 or 5 times a power of ten, about five per axis.
std::vector<double> linear_ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double k = std::ceil(lo / step); k * step <= hi + 1e-9 * step; k += 1.0) {
        ticks.push_back(k * step);
    }
    return ticks;
}

std::vector<double> decade_ticks(double lo, double hi) {
    std::vector<double> ticks;
    for (double k = std::ceil(lo - 1e-12); k <= hi + 1e-12; k += 1.0) ticks.push_back(k);
    if (ticks.empty()) ticks = {lo, hi};
    return ticks;
}

}  // namespace

std::string_view to_string(PlotKind k) noexcept {
    switch (k) {
        case PlotKind::linear: return "linear";
        case PlotKind::semilog_y: return "semilog_y";
        case PlotKind::log_log: return "log_log";
    }
    return "?";
}

double PlotFrame::px(double x) const {
    return left + (x - x_lo) / (x_hi - x_lo) * (right - left);
}

double PlotFrame::py(double y) const {
    return bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top);
}

Plot emit_plot(const TimeSeries& series, PlotKind kind, std::string_view title) {
    if (series.empty()) throw SeriesError("cannot plot an empty series");
    const auto& cols = series.columns();
    const auto& rows = series.rows();
    const std::size_t n_lines = cols.size() - 1;

    Plot plot;
    plot.frame.kind = kind;
    const bool lx = log_x(kind);
    const bool ly = log_y(kind);

    // Surviving points per line, on the axis scale.
    std::vector<std::vector<std::pair<double, double>>> lines(n_lines);
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& r : rows) {
        const double x = axis_value(r[0], lx);
        for (std::size_t j = 0; j < n_lines; ++j) {
            const double y = axis_value(r[j + 1], ly);
            if (std::isnan(x) || std::isnan(y)) {
                ++plot.dropped;
                continue;
            }
            lines[j].emplace_back(x, y);
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_lo <= x_hi)) throw SeriesError("no finite points to plot");
    widen(x_lo, x_hi);
    widen(y_lo, y_hi);
    auto& f = plot.frame;
    f.x_lo = x_lo;
    f.x_hi = x_hi;
    f.y_lo = y_lo;
    f.y_hi = y_hi;

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"400\" "
         "viewBox=\"0 0 640 400\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
    if (!title.empty()) {
        s += "<text x=\"345\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\" "
             "text-anchor=\"middle\">" + escape(title) + "</text>\n";
    }
    s += "<rect x=\"" + fixed2(f.left) + "\" y=\"" + fixed2(f.top) + "\" width=\"" +
         fixed2(f.right - f.left) + "\" height=\"" + fixed2(f.bottom - f.top) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    s += "<g font-family=\"sans-serif\" font-size=\"10\">\n";
    for (double t : lx ? decade_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi)) {
        const std::string x = fixed2(f.px(t));
        s += "<line x1=\"" + x + "\" y1=\"" + fixed2(f.bottom) + "\" x2=\"" + x + "\" y2=\"" +
             fixed2(f.bottom + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + x + "\" y=\"" + fixed2(f.bottom + 17) + "\" text-anchor=\"middle\">" +
             label(lx ? std::pow(10.0, t) : t) + "</text>\n";
    }
    for (double t : ly ? decade_ticks(y_lo, y_hi) : linear_ticks(y_lo, y_hi)) {
        const std::string y = fixed2(f.py(t));
        s += "<line x1=\"" + fixed2(f.left - 5) + "\" y1=\"" + y + "\" x2=\"" + fixed2(f.left) +
             "\" y2=\"" + y + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + fixed2(f.left - 8) + "\" y=\"" + fixed2(f.py(t) + 3.5) +
             "\" text-anchor=\"end\">" + label(ly ? std::pow(10.0, t) : t) + "</text>\n";
    }
    s += "<text x=\"345\" y=\"" + fixed2(f.bottom + 34) + "\" text-anchor=\"middle\">" +
         escape(cols[0]) + "</text>\n";
    s += "</g>\n";

    for (std::size_t j = 0; j < n_lines; ++j) {
        if (lines[j].empty()) continue;
        const char* colour = palette[j % std::size(palette)];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) +
             "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t k = 0; k < lines[j].size(); ++k) {
            if (k) s += ' ';
            s += fixed2(f.px(lines[j][k].first)) + ',' + fixed2(f.py(lines[j][k].second));
        }
        s += "\"/>\n";
    }

    // Legend along the bottom edge.
    s += "<g font-family=\"sans-serif\" font-size=\"10\">\n";
    double lx0 = f.left;
    for (std::size_t j = 0; j < n_lines; ++j) {
        const char* colour = palette[j % std::size(palette)];
        s += "<line x1=\"" + fixed2(lx0) + "\" y1=\"385.00\" x2=\"" + fixed2(lx0 + 18) +
             "\" y2=\"385.00\" stroke=\"" + colour + "\" stroke-width=\"1.5\"/>\n";
        s += "<text x=\"" + fixed2(lx0 + 22) + "\" y=\"388.50\">" + escape(cols[j + 1]) + "</text>\n";
        lx0 += 30.0 + 6.0 * static_cast<double>(cols[j + 1].size());
    }
    s += "</g>\n";
    if (plot.dropped) {
        s += "<!-- dropped points: " + std::to_string(plot.dropped) + " -->\n";
    }
    s += "</svg>\n";
    plot.svg = std::move(s);
    return plot;
}

}  // namespace nematic::harness
