#include "roifc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace roifc {

namespace {

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

void open_svg(std::string& out, double width, double height) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width, "%.0f") +
           "\" height=\"" + fmt(height, "%.0f") + "\" viewBox=\"0 0 " + fmt(width, "%.0f") +
           " " + fmt(height, "%.0f") + "\" font-family=\"sans-serif\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
}

void text(std::string& out, double x, double y, const std::string& s, int size,
          const char* anchor = "middle", const char* fill = "#202020") {
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"" +
           std::to_string(size) + "\" text-anchor=\"" + anchor + "\" fill=\"" + fill +
           "\">" + escape_text(s) + "</text>\n";
}

void line(std::string& out, double x1, double y1, double x2, double y2,
          const char* stroke = "#606060", double width = 1.0) {
    out += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
           "\" y2=\"" + fmt(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"" +
           fmt(width, "%.1f") + "\"/>\n";
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    double px_lo = 0.0;  // pixel of lo
    double px_hi = 0.0;  // pixel of hi

    double map(double v) const {
        const double t = (v - lo) / (hi - lo);
        return px_lo + t * (px_hi - px_lo);
    }
};

}  // namespace

std::string svg_scatter(const std::vector<ScatterSeries>& series,
                        const std::string& title) {
    const double width = 640, height = 480;
    const double ml = 60, mr = 150, mt = 45, mb = 45;

    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            if (first) {
                lo_x = hi_x = p[0];
                lo_y = hi_y = p[1];
                first = false;
            } else {
                lo_x = std::min(lo_x, p[0]);
                hi_x = std::max(hi_x, p[0]);
                lo_y = std::min(lo_y, p[1]);
                hi_y = std::max(hi_y, p[1]);
            }
        }
    }
    auto pad = [](double& lo, double& hi) {
        const double span = hi - lo;
        const double margin = span > 0 ? 0.05 * span : 1.0;
        lo -= margin;
        hi += margin;
    };
    pad(lo_x, hi_x);
    pad(lo_y, hi_y);

    const Axis ax{lo_x, hi_x, ml, width - mr};
    const Axis ay{lo_y, hi_y, height - mb, mt};  // y grows upward

    std::string out;
    open_svg(out, width, height);
    text(out, (ml + width - mr) / 2, 25, title, 15);

    out += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" +
           fmt(width - ml - mr) + "\" height=\"" + fmt(height - mt - mb) +
           "\" fill=\"none\" stroke=\"#606060\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double vx = lo_x + (hi_x - lo_x) * i / 4.0;
        const double vy = lo_y + (hi_y - lo_y) * i / 4.0;
        line(out, ax.map(vx), height - mb, ax.map(vx), height - mb + 4);
        text(out, ax.map(vx), height - mb + 18, fmt(vx), 10);
        line(out, ml - 4, ay.map(vy), ml, ay.map(vy));
        text(out, ml - 8, ay.map(vy) + 3, fmt(vy), 10, "end");
    }
    text(out, (ml + width - mr) / 2, height - 8, "z1", 12);
    text(out, 18, (mt + height - mb) / 2, "z2", 12);

    for (const auto& s : series) {
        for (const auto& p : s.points) {
            out += "<circle cx=\"" + fmt(ax.map(p[0])) + "\" cy=\"" + fmt(ay.map(p[1])) +
                   "\" r=\"3\" fill=\"" + s.color + "\" fill-opacity=\"0.75\"/>\n";
        }
    }

    double legend_y = mt + 12;
    for (const auto& s : series) {
        out += "<circle cx=\"" + fmt(width - mr + 18) + "\" cy=\"" + fmt(legend_y) +
               "\" r=\"5\" fill=\"" + s.color + "\"/>\n";
        text(out, width - mr + 30, legend_y + 4,
             s.name + " (" + std::to_string(s.points.size()) + ")", 12, "start");
        legend_y += 20;
    }

    out += "</svg>\n";
    return out;
}

std::string svg_bars(const std::vector<BarDatum>& bars, const std::string& title,
                     const std::string& y_label) {
    const double slot = 80;
    const double ml = 70, mr = 25, mt = 45, mb = 60;
    const double width = ml + mr + std::max<double>(240, slot * bars.size());
    const double height = 380;

    double lo = 0, hi = 0;
    for (const auto& b : bars) {
        lo = std::min(lo, b.value - b.whisker);
        hi = std::max(hi, b.value + b.whisker);
    }
    if (hi == lo) hi = lo + 1.0;
    const double span = hi - lo;
    hi += 0.12 * span;
    if (lo < 0) lo -= 0.08 * span;

    const Axis ay{lo, hi, height - mb, mt};

    std::string out;
    open_svg(out, width, height);
    text(out, width / 2, 25, title, 15);

    for (int i = 0; i <= 4; ++i) {
        const double v = lo + (hi - lo) * i / 4.0;
        line(out, ml, ay.map(v), width - mr, ay.map(v), "#e0e0e0");
        text(out, ml - 8, ay.map(v) + 3, fmt(v, "%.3f"), 10, "end");
    }
    line(out, ml, ay.map(0.0), width - mr, ay.map(0.0), "#606060");
    text(out, 16, (mt + height - mb) / 2, y_label, 12);

    const double plot_w = width - ml - mr;
    const double step = plot_w / bars.size();
    const double bar_w = std::min(48.0, step * 0.55);
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& b = bars[i];
        const double cx = ml + step * (static_cast<double>(i) + 0.5);
        const double y0 = ay.map(0.0);
        const double y1 = ay.map(b.value);
        out += "<rect x=\"" + fmt(cx - bar_w / 2) + "\" y=\"" + fmt(std::min(y0, y1)) +
               "\" width=\"" + fmt(bar_w) + "\" height=\"" + fmt(std::fabs(y0 - y1)) +
               "\" fill=\"" + b.color + "\"/>\n";
        double top = std::min(y0, y1);
        if (b.whisker > 0) {
            const double wy1 = ay.map(b.value - b.whisker);
            const double wy2 = ay.map(b.value + b.whisker);
            line(out, cx, wy1, cx, wy2, "#202020", 1.5);
            line(out, cx - 8, wy1, cx + 8, wy1, "#202020", 1.5);
            line(out, cx - 8, wy2, cx + 8, wy2, "#202020", 1.5);
            top = std::min(top, std::min(wy1, wy2));
        }
        if (b.star) {
            text(out, cx, top - 8, "*", 20);
        }
        text(out, cx, height - mb + 18, b.label, 11);
        text(out, cx, height - mb + 34, fmt(b.value, "%.4f"), 10, "middle", "#505050");
    }

    out += "</svg>\n";
    return out;
}

}  // namespace roifc
