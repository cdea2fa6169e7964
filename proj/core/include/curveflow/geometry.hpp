#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

/// Derived per-curve fields. All arclength derivatives come from FFT spectral
/// differentiation of the trigonometric interpolant; integrals are trapezoid
/// sums on the uniform theta grid (spectrally accurate for smooth periodic
/// integrands).
struct GeometryCache {
    double length = 0.0;       // L
    double area = 0.0;         // signed area A, positive for CCW simple curves
    std::vector<double> arclength;   // s_j, s_0 = 0
    std::vector<Vec2> tangent;       // unit
    std::vector<Vec2> normal;        // inward unit normal = tangent rotated by +pi/2
    std::vector<double> kappa;       // scalar curvature
    std::vector<double> kappa_dev;   // kappa minus its arclength mean
    std::vector<double> speed;       // |df/dtheta|, the quadrature weight
};

GeometryCache geometry_of(const ClosedCurve& curve);

/// Signed area by the spectral contour integral (1/2) oint (x dy - y dx).
double signed_area(const ClosedCurve& curve);

/// (1/2pi) oint kappa ds rounded to the nearest integer; throws when the raw
/// value is more than 1e-4 away from an integer.
int rotation_number(const ClosedCurve& curve);

struct ConvexityResult {
    bool strictly_convex = false;
    double min_kappa = 0.0;
};
ConvexityResult is_strictly_convex(const ClosedCurve& curve);

/// Resample onto n_new nodes equally spaced in the arclength of the
/// trigonometric interpolant, node 0 anchored at the old theta = 0 point.
ClosedCurve resample_uniform_arclength(const ClosedCurve& curve, std::size_t n_new);

/// O(N^2) segment-pair intersection scan (generation-time screening).
bool is_simple(const ClosedCurve& curve);

// ---- generators -----------------------------------------------------------

struct CircleSpec {
    Vec2 center{0.0, 0.0};
    double radius = 1.0;
};

struct EllipseSpec {
    double a = 1.0;
    double b = 1.0;
};

struct PolarMode {
    int k = 0;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

/// r(u) = base + sum_k (cos_amp*cos(k u) + sin_amp*sin(k u))
struct PolarSpec {
    double base = 1.0;
    std::vector<PolarMode> modes;
};

struct FourierMode {
    int k = 0;
    cdouble coeff{0.0, 0.0};
};

/// f(theta) = sum_k coeff_k exp(2*pi*i*k*theta); coeff at k = 1 dominant.
struct FourierSpec {
    std::vector<FourierMode> modes;
};

struct GeneratorSpec {
    std::variant<CircleSpec, EllipseSpec, PolarSpec, FourierSpec> shape = CircleSpec{};
    std::size_t samples = 256;
};

/// Builds the curve, resamples it to uniform arclength, and screens it:
/// rotation number must be 1, the curve must be simple. Rejected generators
/// throw CurveError (fuzzers catch and redraw).
ClosedCurve make_curve(const GeneratorSpec& spec);

namespace detail {
/// Arclength function of the interpolant: s(theta) = L*theta + p(theta) with
/// p periodic, p(0) = 0. Exposed for the flow stepper's fast reprojection.
struct ArclengthSeries {
    double length = 0.0;
    std::vector<cdouble> periodic_modes;  // modes of p
    std::vector<cdouble> speed_modes;     // modes of |f_theta|
};
ArclengthSeries arclength_series(const std::vector<cdouble>& curve_modes);
}  // namespace detail

}  // namespace curveflow
