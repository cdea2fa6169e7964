#include "curveflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace curveflow::svg {

namespace {

constexpr double kWidth = 720.0, kHeight = 480.0;
constexpr double kMarginL = 70.0, kMarginR = 20.0, kMarginT = 40.0, kMarginB = 50.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(lo < hi)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.04 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::ofstream open(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG file: " + path);
    return out;
}

void header(std::ofstream& out, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
        << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << " "
        << num(kHeight) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" font-family=\"sans-serif\" "
        << "font-size=\"16\" text-anchor=\"middle\">" << title << "</text>\n";
}

}  // namespace

void write_line_chart(const LineChart& chart, const std::string& path) {
    Range rx, ry;
    for (const auto& tr : chart.traces) {
        for (double v : tr.x) rx.add(v);
        for (double v : tr.y) ry.add(chart.log_y ? std::log10(std::max(v, 1e-300)) : v);
    }
    rx.pad();
    ry.pad();

    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    auto px = [&](double v) { return kMarginL + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto py = [&](double v) { return kMarginT + (ry.hi - v) / (ry.hi - ry.lo) * ph; };

    auto out = open(path);
    header(out, chart.title);
    out << "<rect x=\"" << num(kMarginL) << "\" y=\"" << num(kMarginT) << "\" width=\"" << num(pw)
        << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (int i = 0; i <= 5; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / 5.0;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / 5.0;
        out << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(kMarginT + ph) << "\" x2=\""
            << num(px(fx)) << "\" y2=\"" << num(kMarginT + ph + 5) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(kMarginT + ph + 18)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << num(fx)
            << "</text>\n";
        out << "<line x1=\"" << num(kMarginL - 5) << "\" y1=\"" << num(py(fy)) << "\" x2=\""
            << num(kMarginL) << "\" y2=\"" << num(py(fy)) << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << num(kMarginL - 8) << "\" y=\"" << num(py(fy) + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << num(kMarginL + pw / 2) << "\" y=\"" << num(kHeight - 10)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" << chart.x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << num(kMarginT + ph / 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num(kMarginT + ph / 2) << ")\">" << (chart.log_y ? "log10 " + chart.y_label : chart.y_label)
        << "</text>\n";

    int color = 0;
    double legend_y = kMarginT + 14;
    for (const auto& tr : chart.traces) {
        const char* stroke = kPalette[color % 8];
        out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < tr.x.size() && i < tr.y.size(); ++i) {
            const double yv = chart.log_y ? std::log10(std::max(tr.y[i], 1e-300)) : tr.y[i];
            out << num(px(tr.x[i])) << "," << num(py(yv)) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << num(kMarginL + pw - 8) << "\" y=\"" << num(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\"" << stroke
            << "\">" << tr.label << "</text>\n";
        legend_y += 15;
        ++color;
    }
    out << "</svg>\n";
}

void write_curve_sketch(const CurveSketch& sketch, const std::string& path) {
    Range rx, ry;
    for (const auto& tr : sketch.curves) {
        for (double v : tr.x) rx.add(v);
        for (double v : tr.y) ry.add(v);
    }
    rx.pad();
    ry.pad();
    // equal aspect
    const double cx = 0.5 * (rx.lo + rx.hi), cy = 0.5 * (ry.lo + ry.hi);
    const double half = 0.5 * std::max(rx.hi - rx.lo, ry.hi - ry.lo);
    rx = {cx - half, cx + half};
    ry = {cy - half, cy + half};

    const double side = std::min(kWidth - kMarginL - kMarginR, kHeight - kMarginT - kMarginB);
    auto px = [&](double v) { return kMarginL + (v - rx.lo) / (rx.hi - rx.lo) * side; };
    auto py = [&](double v) { return kMarginT + (ry.hi - v) / (ry.hi - ry.lo) * side; };

    auto out = open(path);
    header(out, sketch.title);
    int color = 0;
    double legend_y = kMarginT + 14;
    for (const auto& tr : sketch.curves) {
        const char* stroke = kPalette[color % 8];
        out << "<polygon fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < tr.x.size() && i < tr.y.size(); ++i)
            out << num(px(tr.x[i])) << "," << num(py(tr.y[i])) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << num(kWidth - kMarginR - 8) << "\" y=\"" << num(legend_y)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\" fill=\"" << stroke
            << "\">" << tr.label << "</text>\n";
        legend_y += 15;
        ++color;
    }
    out << "</svg>\n";
}

}  // namespace curveflow::svg
