#include "curveflow/curve.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace curveflow {

bool ClosedCurve::valid_sample_count(std::size_t n) {
    return n >= 16 && is_power_of_two(n);
}

ClosedCurve::ClosedCurve(std::vector<Vec2> points) : pts_(std::move(points)) {
    const std::size_t n = pts_.size();
    if (!valid_sample_count(n))
        throw CurveError("ClosedCurve: sample count " + std::to_string(n) +
                         " is not a power of two >= 16");
    for (std::size_t j = 0; j < n; ++j) {
        const Vec2 d = pts_[(j + 1) % n] - pts_[j];
        if (!(d.norm() > 0.0))
            throw CurveError("ClosedCurve: repeated point at sample index " + std::to_string(j));
        if (!std::isfinite(pts_[j].x) || !std::isfinite(pts_[j].y))
            throw CurveError("ClosedCurve: non-finite point at sample index " + std::to_string(j));
    }
}

std::vector<cdouble> ClosedCurve::complex_points() const {
    std::vector<cdouble> z(pts_.size());
    for (std::size_t j = 0; j < pts_.size(); ++j) z[j] = {pts_[j].x, pts_[j].y};
    return z;
}

ClosedCurve ClosedCurve::from_complex(const std::vector<cdouble>& z) {
    std::vector<Vec2> pts(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) pts[j] = {z[j].real(), z[j].imag()};
    return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CurveError("cannot open curve file: " + path);
    return read_csv_stream(in, path);
}

ClosedCurve ClosedCurve::read_csv_stream(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw CurveError(origin + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,y") throw CurveError(origin + ": expected header 'x,y', got '" + line + "'");
    std::vector<Vec2> pts;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CurveError(origin + ": row " + std::to_string(row) + " is not 'x,y'");
        try {
            pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            throw CurveError(origin + ": unparsable number at row " + std::to_string(row));
        }
    }
    return ClosedCurve(std::move(pts));
}

void ClosedCurve::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw CurveError("cannot write curve file: " + path);
    write_csv_stream(out);
}

void ClosedCurve::write_csv_stream(std::ostream& out) const {
    out << "x,y\n";
    char buf[64];
    for (const Vec2& p : pts_) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
        out << buf;
    }
}

ClosedCurve transform(const ClosedCurve& curve, double scale, Vec2 translation, double angle) {
    if (!(scale > 0.0)) throw CurveError("transform: scale must be positive");
    const double c = std::cos(angle), s = std::sin(angle);
    std::vector<Vec2> pts;
    pts.reserve(curve.size());
    for (const Vec2& p : curve.points()) {
        Vec2 r{c * p.x - s * p.y, s * p.x + c * p.y};
        pts.push_back({scale * r.x + translation.x, scale * r.y + translation.y});
    }
    return ClosedCurve(std::move(pts));
}

}  // namespace curveflow
