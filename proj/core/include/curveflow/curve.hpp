#pragma once

#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "curveflow/fft.hpp"

namespace curveflow {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double c) const { return {c * x, c * y}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double c, Vec2 v) { return v * c; }

struct CurveError : std::runtime_error {
    explicit CurveError(const std::string& what) : std::runtime_error(what) {}
};

/// Closed plane curve sampled at theta_j = j/N, implicitly periodic.
/// N must be a power of two >= 16 (radix-2 transforms) and consecutive
/// samples must be distinct. Degenerate inputs are rejected at construction,
/// never silently smoothed.
class ClosedCurve {
public:
    explicit ClosedCurve(std::vector<Vec2> points);

    std::size_t size() const { return pts_.size(); }
    const std::vector<Vec2>& points() const { return pts_; }
    Vec2 operator[](std::size_t j) const { return pts_[j]; }

    std::vector<cdouble> complex_points() const;
    static ClosedCurve from_complex(const std::vector<cdouble>& z);

    /// CSV with header `x,y`, one row per sample; 17 significant digits so
    /// writer/reader round-trip bit-exactly.
    static ClosedCurve read_csv(const std::string& path);
    void write_csv(const std::string& path) const;
    static ClosedCurve read_csv_stream(std::istream& in, const std::string& origin);
    void write_csv_stream(std::ostream& out) const;

    static bool valid_sample_count(std::size_t n);

private:
    std::vector<Vec2> pts_;
};

/// Similarity transform: rotate by `angle`, scale by `scale` (> 0), then
/// translate. Pointwise, orientation preserving.
ClosedCurve transform(const ClosedCurve& curve, double scale, Vec2 translation, double angle);

}  // namespace curveflow
