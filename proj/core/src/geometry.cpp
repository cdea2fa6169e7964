#include "curveflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curveflow/spectral.hpp"

namespace curveflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

}  // namespace

namespace detail {

ArclengthSeries arclength_series(const std::vector<cdouble>& curve_modes) {
    const std::size_t n = curve_modes.size();
    auto dz = spectral::grid(spectral::derivative(curve_modes, 1));
    std::vector<cdouble> speed(n);
    for (std::size_t j = 0; j < n; ++j) speed[j] = {std::abs(dz[j]), 0.0};
    ArclengthSeries out;
    out.speed_modes = spectral::modes(speed);
    out.length = out.speed_modes[0].real();
    out.periodic_modes = spectral::antiderivative_periodic(out.speed_modes);
    // pin p(0) = 0 so s(theta) = L*theta + p(theta) starts at zero
    cdouble p0{0.0, 0.0};
    for (const auto& c : out.periodic_modes) p0 += c;
    out.periodic_modes[0] -= p0;
    return out;
}

}  // namespace detail

GeometryCache geometry_of(const ClosedCurve& curve) {
    const std::size_t n = curve.size();
    const auto z = curve.complex_points();
    const auto zm = spectral::modes(z);
    const auto dz = spectral::grid(spectral::derivative(zm, 1));
    const auto ddz = spectral::grid(spectral::derivative(zm, 2));

    GeometryCache g;
    g.speed.resize(n);
    g.tangent.resize(n);
    g.normal.resize(n);
    g.kappa.resize(n);
    g.kappa_dev.resize(n);

    double vmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) vmax = std::max(vmax, std::abs(dz[j]));
    for (std::size_t j = 0; j < n; ++j) {
        const double v = std::abs(dz[j]);
        if (!(v > 1e-12 * vmax))
            throw CurveError("geometry_of: degenerate parametrization (zero speed) at sample index " +
                             std::to_string(j));
        g.speed[j] = v;
        const cdouble t = dz[j] / v;
        g.tangent[j] = {t.real(), t.imag()};
        g.normal[j] = {-t.imag(), t.real()};  // rotate by +pi/2 (inward for CCW)
        g.kappa[j] = std::imag(std::conj(dz[j]) * ddz[j]) / (v * v * v);
    }

    g.length = mean(g.speed);

    double area2 = 0.0;  // Im conj(z) dz integrates to 2A
    for (std::size_t j = 0; j < n; ++j) area2 += std::imag(std::conj(z[j]) * dz[j]);
    g.area = 0.5 * area2 / static_cast<double>(n);

    // arclength positions s_j with s_0 = 0
    auto as = detail::arclength_series(zm);
    auto p = spectral::grid(as.periodic_modes);
    g.arclength.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        g.arclength[j] = g.length * static_cast<double>(j) / static_cast<double>(n) + p[j].real();

    double kappa_mean = 0.0;  // (1/L) oint kappa ds
    for (std::size_t j = 0; j < n; ++j) kappa_mean += g.kappa[j] * g.speed[j];
    kappa_mean /= static_cast<double>(n) * g.length;
    for (std::size_t j = 0; j < n; ++j) g.kappa_dev[j] = g.kappa[j] - kappa_mean;

    return g;
}

double signed_area(const ClosedCurve& curve) {
    const auto z = curve.complex_points();
    const auto dz = spectral::grid(spectral::derivative(spectral::modes(z), 1));
    double area2 = 0.0;
    for (std::size_t j = 0; j < z.size(); ++j) area2 += std::imag(std::conj(z[j]) * dz[j]);
    return 0.5 * area2 / static_cast<double>(z.size());
}

int rotation_number(const ClosedCurve& curve) {
    const auto g = geometry_of(curve);
    double total = 0.0;
    for (std::size_t j = 0; j < curve.size(); ++j) total += g.kappa[j] * g.speed[j];
    const double raw = total / static_cast<double>(curve.size()) / kTwoPi;
    const double nearest = std::round(raw);
    if (std::abs(raw - nearest) > 1e-4)
        throw CurveError("rotation_number: winding " + std::to_string(raw) +
                         " is not integral; discretization too coarse");
    return static_cast<int>(nearest);
}

ConvexityResult is_strictly_convex(const ClosedCurve& curve) {
    const auto g = geometry_of(curve);
    double mink = g.kappa[0];
    for (double k : g.kappa) mink = std::min(mink, k);
    return {mink > 0.0, mink};
}

namespace {

/// Solves s(theta) = target on the bracket [lo, hi] by safeguarded Newton.
double invert_arclength(const detail::ArclengthSeries& as, double target, double lo, double hi,
                        double s_lo, double s_hi) {
    auto s_of = [&](double th) {
        return as.length * th + spectral::eval(as.periodic_modes, th).real();
    };
    auto v_of = [&](double th) { return spectral::eval(as.speed_modes, th).real(); };

    double a = lo, b = hi;
    const double fa = s_lo - target, fb = s_hi - target;
    double x = a + (b - a) * (fa == fb ? 0.5 : -fa / (fb - fa));
    x = std::clamp(x, a, b);
    for (int it = 0; it < 100; ++it) {
        const double fx = s_of(x) - target;
        if (std::abs(fx) < 1e-15 * as.length) return x;
        if (fx > 0.0) b = x; else a = x;
        const double v = v_of(x);
        double nx = v > 0.0 ? x - fx / v : 0.5 * (a + b);
        if (!(nx >= a && nx <= b)) nx = 0.5 * (a + b);  // bisection safeguard
        if (std::abs(nx - x) < 1e-16) return nx;
        x = nx;
    }
    return x;
}

}  // namespace

ClosedCurve resample_uniform_arclength(const ClosedCurve& curve, std::size_t n_new) {
    if (!ClosedCurve::valid_sample_count(n_new))
        throw CurveError("resample_uniform_arclength: target count " + std::to_string(n_new) +
                         " is not a power of two >= 16");
    const std::size_t n = curve.size();
    const auto zm = spectral::modes(curve.complex_points());
    const auto as = detail::arclength_series(zm);
    const double L = as.length;
    if (!(L > 0.0)) throw CurveError("resample_uniform_arclength: zero length");

    // dense monotone table of s(theta) for bracketing
    const std::size_t m = 8 * std::max(n, n_new);
    auto p_dense = spectral::grid(spectral::upsample_modes(as.periodic_modes, m));
    std::vector<double> s_dense(m + 1);
    for (std::size_t i = 0; i < m; ++i)
        s_dense[i] = L * static_cast<double>(i) / static_cast<double>(m) + p_dense[i].real();
    s_dense[m] = L;
    for (std::size_t i = 1; i <= m; ++i)
        if (!(s_dense[i] >= s_dense[i - 1]))
            throw CurveError("resample_uniform_arclength: arclength not monotone (degenerate interpolant)");

    std::vector<cdouble> out(n_new);
    out[0] = spectral::eval(zm, 0.0);
    std::size_t cell = 0;
    for (std::size_t j = 1; j < n_new; ++j) {
        const double target = L * static_cast<double>(j) / static_cast<double>(n_new);
        while (cell + 1 <= m && s_dense[cell + 1] < target) ++cell;
        const double lo = static_cast<double>(cell) / static_cast<double>(m);
        const double hi = static_cast<double>(cell + 1) / static_cast<double>(m);
        const double theta = invert_arclength(as, target, lo, hi, s_dense[cell], s_dense[cell + 1]);
        out[j] = spectral::eval(zm, theta);
    }
    return ClosedCurve::from_complex(out);
}

bool is_simple(const ClosedCurve& curve) {
    const auto& p = curve.points();
    const std::size_t n = p.size();
    auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    };
    auto segments_cross = [&](std::size_t i, std::size_t j) {
        const Vec2 a = p[i], b = p[(i + 1) % n], c = p[j], d = p[(j + 1) % n];
        const double o1 = orient(a, b, c), o2 = orient(a, b, d);
        const double o3 = orient(c, d, a), o4 = orient(c, d, b);
        return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;  // adjacent through the seam
            if (segments_cross(i, j)) return false;
        }
    }
    return true;
}

namespace {

ClosedCurve synthesize(const GeneratorSpec& spec) {
    const std::size_t n = spec.samples;
    if (!ClosedCurve::valid_sample_count(n))
        throw CurveError("make_curve: sample count " + std::to_string(n) +
                         " is not a power of two >= 16");

    if (const auto* c = std::get_if<CircleSpec>(&spec.shape)) {
        if (!(c->radius > 0.0)) throw CurveError("make_curve: circle radius must be positive");
        std::vector<Vec2> pts(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double u = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            pts[j] = {c->center.x + c->radius * std::cos(u), c->center.y + c->radius * std::sin(u)};
        }
        return ClosedCurve(std::move(pts));
    }
    if (const auto* e = std::get_if<EllipseSpec>(&spec.shape)) {
        if (!(e->a > 0.0) || !(e->b > 0.0)) throw CurveError("make_curve: ellipse semi-axes must be positive");
        std::vector<Vec2> pts(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double u = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            pts[j] = {e->a * std::cos(u), e->b * std::sin(u)};
        }
        return resample_uniform_arclength(ClosedCurve(std::move(pts)), n);
    }
    if (const auto* ps = std::get_if<PolarSpec>(&spec.shape)) {
        std::vector<Vec2> pts(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double u = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
            double r = ps->base;
            for (const auto& md : ps->modes)
                r += md.cos_amp * std::cos(md.k * u) + md.sin_amp * std::sin(md.k * u);
            if (!(r > 0.0))
                throw CurveError("make_curve: polar radius not positive at sample " + std::to_string(j));
            pts[j] = {r * std::cos(u), r * std::sin(u)};
        }
        return resample_uniform_arclength(ClosedCurve(std::move(pts)), n);
    }
    const auto& fs = std::get<FourierSpec>(spec.shape);
    std::vector<cdouble> m(n, cdouble{0.0, 0.0});
    for (const auto& md : fs.modes) {
        if (std::abs(md.k) >= static_cast<int>(n) / 2)
            throw CurveError("make_curve: fourier mode |k| must be < N/2");
        const std::size_t slot = md.k >= 0 ? static_cast<std::size_t>(md.k)
                                           : n - static_cast<std::size_t>(-md.k);
        m[slot] += md.coeff;
    }
    auto g = spectral::grid(m);
    return resample_uniform_arclength(ClosedCurve::from_complex(g), n);
}

}  // namespace

ClosedCurve make_curve(const GeneratorSpec& spec) {
    ClosedCurve curve = synthesize(spec);
    const int winding = rotation_number(curve);
    if (winding != 1)
        throw CurveError("make_curve: generated curve has rotation number " +
                         std::to_string(winding) + ", expected 1");
    if (!is_simple(curve))
        throw CurveError("make_curve: generated curve is self-intersecting");
    return curve;
}

}  // namespace curveflow
