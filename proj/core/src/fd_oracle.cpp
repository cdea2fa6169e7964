#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "curveflow/quantities.hpp"

namespace curveflow::fd {

namespace {

// (-u_{j+2} + 8 u_{j+1} - 8 u_{j-1} + u_{j-2}) / (12 h), h = 1/N, periodic.
std::vector<double> d_theta(const std::vector<double>& u) {
    const std::size_t n = u.size();
    std::vector<double> out(n);
    const double scale = static_cast<double>(n) / 12.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double up1 = u[(j + 1) % n], up2 = u[(j + 2) % n];
        const double um1 = u[(j + n - 1) % n], um2 = u[(j + n - 2) % n];
        out[j] = scale * (-up2 + 8.0 * up1 - 8.0 * um1 + um2);
    }
    return out;
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

}  // namespace

InvariantVector invariants_of(const ClosedCurve& curve, int lmax) {
    if (lmax < 0) throw std::invalid_argument("fd::invariants_of: lmax must be >= 0");
    const std::size_t n = curve.size();
    std::vector<double> x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = curve[j].x;
        y[j] = curve[j].y;
    }
    const auto xt = d_theta(x), yt = d_theta(y);
    const auto xtt = d_theta(xt), ytt = d_theta(yt);

    // The oracle targets uniform-arclength sampling (the library's standing
    // precondition), so the parametrization speed is the constant L: using the
    // scalar mean instead of the pointwise FD speed keeps the route order-4
    // without injecting pointwise differencing noise at every chain stage.
    std::vector<double> speed(n);
    for (std::size_t j = 0; j < n; ++j) speed[j] = std::hypot(xt[j], yt[j]);
    const double length = mean(speed);
    {
        double vmin = speed[0], vmax = speed[0];
        for (double v : speed) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
        if (vmax - vmin > 1e-4 * vmax)
            throw std::invalid_argument(
                "fd::invariants_of: curve is not uniform-arclength sampled");
    }

    std::vector<double> kappa(n);
    const double l3 = length * length * length;
    for (std::size_t j = 0; j < n; ++j)
        kappa[j] = (xt[j] * ytt[j] - yt[j] * xtt[j]) / l3;

    std::vector<double> area_term(n);
    for (std::size_t j = 0; j < n; ++j) area_term[j] = x[j] * yt[j] - y[j] * xt[j];
    const double area = 0.5 * mean(area_term);
    const double kappa_mean = mean(kappa);

    std::vector<double> u(n);
    for (std::size_t j = 0; j < n; ++j) u[j] = kappa[j] - kappa_mean;

    InvariantVector out;
    out.i_minus1 = 1.0 - 4.0 * std::numbers::pi * area / (length * length);
    out.i.resize(static_cast<std::size_t>(lmax) + 1);
    double lpow = length;
    for (int l = 0; l <= lmax; ++l) {
        std::vector<double> usq(n);
        for (std::size_t j = 0; j < n; ++j) usq[j] = u[j] * u[j];
        out.i[static_cast<std::size_t>(l)] = lpow * mean(usq) * length;
        if (l < lmax) {
            const auto ut = d_theta(u);
            for (std::size_t j = 0; j < n; ++j) u[j] = ut[j] / length;
            lpow *= length * length;
        }
    }
    return out;
}

}  // namespace curveflow::fd
