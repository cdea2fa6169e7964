#pragma once

#include <string>
#include <vector>

namespace curveflow::svg {

struct Trace {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;  // plots log10(max(y, 1e-300))
    std::vector<Trace> traces;
};

/// Small self-contained SVG chart writer (fixed 720x480 canvas, deterministic
/// text output).
void write_line_chart(const LineChart& chart, const std::string& path);

/// Overlaid closed-polyline drawing in a square data viewport.
struct CurveSketch {
    std::string title;
    std::vector<Trace> curves;  // x/y are the polygon vertices
};

void write_curve_sketch(const CurveSketch& sketch, const std::string& path);

}  // namespace curveflow::svg
