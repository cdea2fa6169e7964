// Test-side oracles: closed forms and brute-force routes kept deliberately
// independent of the spectral machinery they check.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "curveflow/curve.hpp"

namespace oracles {

inline constexpr double kPi = std::numbers::pi;

/// Adaptive Simpson quadrature. The tolerance must stay a couple of orders
/// above the integrand's own noise floor or the refinement never settles.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 28) {
    struct Impl {
        const std::function<double(double)>& f;
        double recurse(double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    } impl{f};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return impl.recurse(a, b, fa, fm, fb, whole, tol, depth);
}

// ---- ellipse x = a cos t, y = b sin t --------------------------------------

inline double ellipse_speed(double a, double b, double t) {
    const double c = std::cos(t), s = std::sin(t);
    return std::sqrt(a * a * s * s + b * b * c * c);
}

inline double ellipse_length(double a, double b) {
    return adaptive_simpson([&](double t) { return ellipse_speed(a, b, t); }, 0.0, 2.0 * kPi);
}

inline double ellipse_kappa(double a, double b, double t) {
    const double v = ellipse_speed(a, b, t);
    return a * b / (v * v * v);
}

/// oint g(kappa(t)) ds for the ellipse, via adaptive quadrature in t.
inline double ellipse_integral_ds(double a, double b,
                                  const std::function<double(double)>& g_of_kappa) {
    return adaptive_simpson(
        [&](double t) { return g_of_kappa(ellipse_kappa(a, b, t)) * ellipse_speed(a, b, t); }, 0.0,
        2.0 * kPi);
}

// ---- polar curve r(u) = base + sum amp*cos(k u) ----------------------------

struct PolarCosine {
    double base = 1.0;
    double amp = 0.0;
    int k = 0;

    double r(double u) const { return base + amp * std::cos(k * u); }
    double dr(double u) const { return -amp * k * std::sin(k * u); }
    double ddr(double u) const { return -amp * k * k * std::cos(k * u); }
    double speed(double u) const { return std::hypot(r(u), dr(u)); }
    double kappa(double u) const {
        const double rr = r(u), rp = dr(u), rpp = ddr(u);
        const double num = rr * rr + 2.0 * rp * rp - rr * rpp;
        const double den = std::pow(rr * rr + rp * rp, 1.5);
        return num / den;
    }
    double length() const {
        return adaptive_simpson([&](double u) { return speed(u); }, 0.0, 2.0 * kPi);
    }
    double area() const {
        return adaptive_simpson([&](double u) { return 0.5 * r(u) * r(u); }, 0.0, 2.0 * kPi);
    }
    double integral_ds(const std::function<double(double)>& g_of_kappa) const {
        return adaptive_simpson([&](double u) { return g_of_kappa(kappa(u)) * speed(u); }, 0.0,
                                2.0 * kPi);
    }
    /// oint (kappa'(s))^2 ds with kappa'(s) = kappa'(u)/speed, kappa'(u) by
    /// order-4 differences on the closed form (independent of any FFT). The
    /// differencing noise floor (~1e-12) caps the usable tolerance.
    double integral_dkappa_ds_sq() const {
        const double h = 1e-3;
        auto dkappa_du = [&](double u) {
            return (-kappa(u + 2 * h) + 8 * kappa(u + h) - 8 * kappa(u - h) + kappa(u - 2 * h)) /
                   (12 * h);
        };
        return adaptive_simpson(
            [&](double u) {
                const double d = dkappa_du(u) / speed(u);
                return d * d * speed(u);
            },
            0.0, 2.0 * kPi, 1e-9, 20);
    }
};

// ---- polygon-level oracles --------------------------------------------------

/// Turning-angle winding number of the sample polygon.
inline int turning_angle_winding(const curveflow::ClosedCurve& curve) {
    const auto& p = curve.points();
    const std::size_t n = p.size();
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const auto a = p[(j + n - 1) % n], b = p[j], c = p[(j + 1) % n];
        const double ux = b.x - a.x, uy = b.y - a.y;
        const double vx = c.x - b.x, vy = c.y - b.y;
        total += std::atan2(ux * vy - uy * vx, ux * vx + uy * vy);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

/// Dense cumulative chord-length table of a parametric curve; used to invert
/// arclength without any spectral machinery.
struct ArclengthTable {
    std::vector<double> u;  // parameter values
    std::vector<double> s;  // cumulative length
    double total = 0.0;

    template <class F>
    static ArclengthTable build(F&& point, std::size_t count) {
        ArclengthTable t;
        t.u.resize(count + 1);
        t.s.resize(count + 1);
        double acc = 0.0;
        auto prev = point(0.0);
        t.u[0] = 0.0;
        t.s[0] = 0.0;
        for (std::size_t i = 1; i <= count; ++i) {
            const double ui = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(count);
            const auto cur = point(ui);
            acc += std::hypot(cur.first - prev.first, cur.second - prev.second);
            t.u[i] = ui;
            t.s[i] = acc;
            prev = cur;
        }
        t.total = acc;
        return t;
    }

    double u_at_arclength(double target) const {
        auto it = std::lower_bound(s.begin(), s.end(), target);
        if (it == s.begin()) return u.front();
        if (it == s.end()) return u.back();
        const std::size_t hi = static_cast<std::size_t>(it - s.begin());
        const std::size_t lo = hi - 1;
        const double w = (target - s[lo]) / (s[hi] - s[lo]);
        return u[lo] + w * (u[hi] - u[lo]);
    }
};

/// Plain O(N^2) DFT coefficient sum_j z_j exp(-2 pi i k j / N) / N.
inline std::complex<double> direct_dft_coefficient(const std::vector<std::complex<double>>& z, int k) {
    const std::size_t n = z.size();
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const double ang = -2.0 * kPi * k * static_cast<double>(j) / static_cast<double>(n);
        acc += z[j] * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    return acc / static_cast<double>(n);
}

/// Closed curve with curvature profile kappa(s) = 2pi/L0 + dev(s) integrated
/// from the Frenet equations and closed by dropping the (small) mean of the
/// unit tangent. Used to realize near-extremal Wirtinger profiles.
inline curveflow::ClosedCurve curve_from_curvature(const std::function<double(double)>& dev,
                                                   double length, std::size_t n) {
    // phi(s) = 2 pi s / L + int_0^s dev
    std::vector<double> phi(n);
    double acc = 0.0;
    const double h = length / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = h * static_cast<double>(j);
        phi[j] = 2.0 * kPi * s / length + acc;
        acc += 0.5 * h * (dev(s) + dev(s + h));  // trapezoid
    }
    std::vector<std::complex<double>> tangent(n);
    std::complex<double> mean{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        tangent[j] = {std::cos(phi[j]), std::sin(phi[j])};
        mean += tangent[j];
    }
    mean /= static_cast<double>(n);
    std::vector<curveflow::Vec2> pts(n);
    std::complex<double> pos{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        pts[j] = {pos.real(), pos.imag()};
        pos += h * (tangent[j] - mean);
    }
    return curveflow::ClosedCurve(std::move(pts));
}

}  // namespace oracles
