#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "loschmidt/cli.hpp"

namespace loschmidt::cli {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

// Fixed-width formatting keeps the bytes stable across runs.
std::string fmt(double v, const char* pattern = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo;
    double hi;
    bool log;

    double map(double v, double px_lo, double px_hi) const {
        const double u = log ? std::log10(v) : v;
        return px_lo + (u - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

Axis make_axis(const std::vector<double>& values, bool log) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (!std::isfinite(v) || (log && !(v > 0.0))) continue;
        const double u = log ? std::log10(v) : v;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    if (!std::isfinite(lo)) throw DomainError("nothing to plot");
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
        lo -= 0.5;
        hi += 0.5;
    } else {
        const double pad = 0.03 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    return Axis{lo, hi, log};
}

bool plottable(double x, double y, bool log) {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    return !log || (x > 0.0 && y > 0.0);
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series, const PlotStyle& style) {
    std::vector<double> all_x;
    std::vector<double> all_y;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!plottable(s.xs[i], s.ys[i], style.loglog)) continue;
            all_x.push_back(s.xs[i]);
            all_y.push_back(s.ys[i]);
        }
    }
    if (all_x.empty()) throw DomainError("nothing to plot");
    const Axis ax = make_axis(all_x, style.loglog);
    const Axis ay = make_axis(all_y, style.loglog);
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    const double y1 = kTop;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(kWidth, "%.0f")
       << "\" height=\"" << fmt(kHeight, "%.0f") << "\" viewBox=\"0 0 " << fmt(kWidth, "%.0f") << ' '
       << fmt(kHeight, "%.0f") << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y1) << "\" width=\"" << fmt(x1 - x0) << "\" height=\""
       << fmt(y0 - y1) << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks
    for (int i = 0; i <= 5; ++i) {
        const double f = i / 5.0;
        const double ux = ax.lo + f * (ax.hi - ax.lo);
        const double uy = ay.lo + f * (ay.hi - ay.lo);
        const double px = x0 + f * (x1 - x0);
        const double py = y0 + f * (y1 - y0);
        const double vx = style.loglog ? std::pow(10.0, ux) : ux;
        const double vy = style.loglog ? std::pow(10.0, uy) : uy;
        os << "<line x1=\"" << fmt(px) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(px) << "\" y2=\""
           << fmt(y0 + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(y0 + 20) << "\" font-size=\"12\" text-anchor=\"middle\">"
           << fmt(vx, "%.4g") << "</text>\n";
        os << "<line x1=\"" << fmt(x0 - 5) << "\" y1=\"" << fmt(py) << "\" x2=\"" << fmt(x0) << "\" y2=\""
           << fmt(py) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(x0 - 8) << "\" y=\"" << fmt(py + 4) << "\" font-size=\"12\" text-anchor=\"end\">"
           << fmt(vy, "%.4g") << "</text>\n";
    }
    if (!style.title.empty()) {
        os << "<text x=\"" << fmt(0.5 * (x0 + x1)) << "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">"
           << escape(style.title) << "</text>\n";
    }
    os << "<text x=\"" << fmt(0.5 * (x0 + x1)) << "\" y=\"" << fmt(kHeight - 15)
       << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(style.x_label) << "</text>\n";
    os << "<text x=\"18\" y=\"" << fmt(0.5 * (y0 + y1)) << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << fmt(0.5 * (y0 + y1)) << ")\">" << escape(style.y_label) << "</text>\n";

    for (std::size_t j = 0; j < series.size(); ++j) {
        const auto& s = series[j];
        const char* color = kPalette[j % kPalette.size()];
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
            if (!plottable(s.xs[i], s.ys[i], style.loglog)) continue;
            pts.emplace_back(ax.map(s.xs[i], x0, x1), ay.map(s.ys[i], y0, y1));
        }
        if (style.scatter) {
            for (const auto& [px, py] : pts) {
                os << "<circle cx=\"" << fmt(px) << "\" cy=\"" << fmt(py) << "\" r=\"3\" fill=\"" << color
                   << "\"/>\n";
            }
        } else if (!pts.empty()) {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                os << (i ? " " : "") << fmt(pts[i].first) << ',' << fmt(pts[i].second);
            }
            os << "\"/>\n";
        }
        const double ly = y1 + 18.0 * static_cast<double>(j + 1);
        os << "<line x1=\"" << fmt(x1 + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(x1 + 32) << "\" y2=\""
           << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << fmt(x1 + 38) << "\" y=\"" << fmt(ly) << "\" font-size=\"12\">" << escape(s.label)
           << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace loschmidt::cli
