#include "curveflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curveflow/geometry.hpp"
#include "curveflow/quantities.hpp"
#include "curveflow/spectral.hpp"

namespace curveflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

/// Cheap per-step geometry, computed from the modes once.
struct StepFields {
    std::vector<cdouble> modes;
    std::vector<double> speed;
    std::vector<double> kappa;
    double length = 0.0;
    double area = 0.0;
    double max_abs_kappa = 0.0;
};

StepFields analyze(const ClosedCurve& curve) {
    StepFields f;
    f.modes = spectral::modes(curve.complex_points());
    const std::size_t n = f.modes.size();
    const auto dz = spectral::grid(spectral::derivative(f.modes, 1));
    const auto ddz = spectral::grid(spectral::derivative(f.modes, 2));
    f.speed.resize(n);
    f.kappa.resize(n);
    double lsum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = std::abs(dz[j]);
        if (!(v > 0.0)) throw FlowError("step: degenerate curve (zero speed) at sample " + std::to_string(j));
        f.speed[j] = v;
        f.kappa[j] = std::imag(std::conj(dz[j]) * ddz[j]) / (v * v * v);
        f.max_abs_kappa = std::max(f.max_abs_kappa, std::abs(f.kappa[j]));
        lsum += v;
    }
    f.length = lsum / static_cast<double>(n);
    double a = 0.0;  // pi * sum k |c_k|^2
    for (std::size_t i = 0; i < n; ++i)
        a += spectral::wavenumber(i, n) * std::norm(f.modes[i]);
    f.area = std::numbers::pi * a;
    return f;
}

double coefficient_from_fields(FlowKind kind, const StepFields& f) {
    const std::size_t n = f.speed.size();
    switch (kind) {
        case FlowKind::area_preserving: {
            double total = 0.0;  // oint kappa ds (= 2 pi * winding)
            for (std::size_t j = 0; j < n; ++j) total += f.kappa[j] * f.speed[j];
            return total / static_cast<double>(n) / f.length;
        }
        case FlowKind::jiang_pan: {
            if (!(f.area > 0.0))
                throw FlowError("jiang_pan coefficient: signed area must be positive, got " + fmt(f.area));
            return f.length / (2.0 * f.area);
        }
        case FlowKind::length_preserving: {
            double total = 0.0;  // oint kappa^2 ds
            for (std::size_t j = 0; j < n; ++j) total += f.kappa[j] * f.kappa[j] * f.speed[j];
            return total / static_cast<double>(n) / kTwoPi;
        }
    }
    throw FlowError("unknown flow kind");
}

/// Uniform-arclength reprojection of the curve given by `modes`.
/// Fast path: per-node shifts delta_j are found by Newton on the arclength
/// series evaluated through grid Taylor expansions (a few inverse FFTs).
/// Falls back to the general resampler when the shifts are too large for the
/// expansion to certify convergence.
struct Reprojection {
    std::vector<cdouble> points;
    double length = 0.0;
    int taylor_order = 0;
    bool fallback = false;
    double max_shift = 0.0;
};

Reprojection reproject_uniform(const std::vector<cdouble>& new_modes) {
    const std::size_t n = new_modes.size();
    const auto as = detail::arclength_series(new_modes);
    const double L = as.length;

    Reprojection out;
    out.length = L;

    const auto p0 = spectral::grid(as.periodic_modes);
    double max_p = 0.0;
    for (const auto& v : p0) max_p = std::max(max_p, std::abs(v.real()));
    const double delta_cap = 0.35 / (std::numbers::pi * static_cast<double>(n));

    auto general = [&]() {
        ClosedCurve c = ClosedCurve::from_complex(spectral::grid(new_modes));
        ClosedCurve r = resample_uniform_arclength(c, n);
        out.points = r.complex_points();
        out.fallback = true;
        out.max_shift = max_p / L;
        return out;
    };

    if (max_p / L > delta_cap) return general();

    // Taylor grids of p up to a certified order
    constexpr int kMaxOrder = 10;
    std::vector<std::vector<cdouble>> pg;  // pg[m][j] = p^(m)(theta_j)
    pg.push_back(p0);
    const double dmax0 = max_p / L;
    int order = 1;
    {
        auto dm = as.periodic_modes;
        double fact = 1.0, dpow = dmax0;
        for (; order <= kMaxOrder; ++order) {
            dm = spectral::derivative(dm, 1);
            pg.push_back(spectral::grid(dm));
            fact *= order;
            double gmax = 0.0;
            for (const auto& v : pg.back()) gmax = std::max(gmax, std::abs(v.real()));
            if (gmax * dpow / fact < 1e-16 * L && order >= 3) break;
            dpow *= dmax0;
        }
        if (order > kMaxOrder) return general();
    }

    auto p_taylor = [&](std::size_t j, double d, int max_m) {
        double acc = 0.0, dp = 1.0, fact = 1.0;
        for (int m = 0; m <= max_m; ++m) {
            acc += pg[static_cast<std::size_t>(m)][j].real() * dp / fact;
            dp *= d;
            fact *= (m + 1);
        }
        return acc;
    };
    auto dp_taylor = [&](std::size_t j, double d, int max_m) {
        double acc = 0.0, dp = 1.0, fact = 1.0;
        for (int m = 1; m <= max_m; ++m) {
            acc += pg[static_cast<std::size_t>(m)][j].real() * dp / fact;
            dp *= d;
            fact *= m;
        }
        return acc;
    };

    // Newton for s(theta_j + delta_j) = j L / n, i.e.
    // L*delta + p(theta_j + delta) - p-free target offset = 0.
    std::vector<double> delta(n, 0.0);
    double max_delta = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = -p0[j].real() / L;
        for (int it = 0; it < 8; ++it) {
            const double resid = L * d + p_taylor(j, d, order);
            const double slope = L + dp_taylor(j, d, order);
            const double nd = d - resid / slope;
            if (std::abs(nd - d) < 1e-17) { d = nd; break; }
            d = nd;
        }
        delta[j] = d;
        max_delta = std::max(max_delta, std::abs(d));
    }
    if (max_delta > delta_cap) return general();
    out.max_shift = max_delta;

    // Evaluate the curve at the shifted parameters by the same device.
    std::vector<std::vector<cdouble>> fg;
    fg.push_back(spectral::grid(new_modes));
    double fscale = 0.0;
    for (const auto& v : fg[0]) fscale = std::max(fscale, std::abs(v));
    int forder = 1;
    {
        auto fm = new_modes;
        double fact = 1.0, dpow = max_delta > 0.0 ? max_delta : 1e-30;
        for (; forder <= kMaxOrder; ++forder) {
            fm = spectral::derivative(fm, 1);
            fg.push_back(spectral::grid(fm));
            fact *= forder;
            double gmax = 0.0;
            for (const auto& v : fg.back()) gmax = std::max(gmax, std::abs(v));
            if (gmax * dpow / fact < 1e-16 * fscale && forder >= 3) break;
            dpow *= max_delta;
        }
        if (forder > kMaxOrder) return general();
    }
    out.taylor_order = std::max(order, forder);

    out.points.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        cdouble acc{0.0, 0.0};
        double dp = 1.0, fact = 1.0;
        for (int m = 0; m <= forder; ++m) {
            acc += fg[static_cast<std::size_t>(m)][j] * (dp / fact);
            dp *= delta[j];
            fact *= (m + 1);
        }
        out.points[j] = acc;
    }
    return out;
}

}  // namespace

std::string to_string(FlowKind kind) {
    switch (kind) {
        case FlowKind::area_preserving: return "area_preserving";
        case FlowKind::jiang_pan: return "jiang_pan";
        case FlowKind::length_preserving: return "length_preserving";
    }
    return "unknown";
}

FlowKind flow_kind_from_string(const std::string& name) {
    if (name == "area_preserving") return FlowKind::area_preserving;
    if (name == "jiang_pan") return FlowKind::jiang_pan;
    if (name == "length_preserving") return FlowKind::length_preserving;
    throw std::invalid_argument("unknown flow kind: '" + name + "'");
}

double nonlocal_coefficient(FlowKind kind, const ClosedCurve& curve) {
    return coefficient_from_fields(kind, analyze(curve));
}

FlowState make_state(const ClosedCurve& initial, FlowKind kind) {
    const int winding = rotation_number(initial);
    if (winding != 1)
        throw FlowError("initial curve must have rotation number 1, got " + std::to_string(winding));
    if (!(signed_area(initial) > 0.0))
        throw FlowError("initial curve must have positive signed area");
    ClosedCurve uniform = resample_uniform_arclength(initial, initial.size());
    FlowState s{std::move(uniform), 0.0, kind, 0.0};
    s.lambda = nonlocal_coefficient(kind, s.curve);
    return s;
}

std::pair<FlowState, StepStats> step(const FlowState& state, double dt, const StepOptions& options) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    auto f = analyze(state.curve);
    const std::size_t n = f.modes.size();
    const double h = f.length / static_cast<double>(n);
    if (f.max_abs_kappa * h > options.resolution_bound)
        throw FlowError("step: resolution bound exceeded, max|kappa|*h = " + fmt(f.max_abs_kappa * h) +
                        " > " + fmt(options.resolution_bound));

    const double lambda = coefficient_from_fields(state.kind, f);

    // mode-wise IMEX update: (1 + dt*lambda*mu_k) / (1 + dt*mu_k^2),
    // mu_k = 2 pi k / L. The Nyquist bin gets no transport (odd derivative
    // convention) and full implicit damping.
    std::vector<cdouble> updated(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int k = spectral::wavenumber(i, n);
        const double mu = kTwoPi * static_cast<double>(k) / f.length;
        const double transport = (n % 2 == 0 && i == n / 2) ? 0.0 : dt * lambda * mu;
        updated[i] = f.modes[i] * ((1.0 + transport) / (1.0 + dt * mu * mu));
    }

    if (options.renormalize) {
        double factor = 1.0;
        if (state.kind == FlowKind::length_preserving) {
            const auto as = detail::arclength_series(updated);
            const double target = options.renorm_target > 0.0 ? options.renorm_target : f.length;
            factor = target / as.length;
        } else if (state.kind == FlowKind::area_preserving) {
            double a = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                a += spectral::wavenumber(i, n) * std::norm(updated[i]);
            a *= std::numbers::pi;
            const double target = options.renorm_target > 0.0 ? options.renorm_target : f.area;
            if (a > 0.0) factor = std::sqrt(target / a);
        }
        for (std::size_t i = 0; i < n; ++i)
            if (i != 0) updated[i] *= factor;
    }

    auto rp = reproject_uniform(updated);

    StepStats stats;
    stats.dt = dt;
    stats.d_length = rp.length - f.length;
    stats.taylor_order = rp.taylor_order;
    stats.fallback_resample = rp.fallback;
    stats.max_shift = rp.max_shift;
    {
        double a = 0.0;
        const auto um = spectral::modes(rp.points);
        for (std::size_t i = 0; i < n; ++i)
            a += spectral::wavenumber(i, n) * std::norm(um[i]);
        stats.d_area = std::numbers::pi * a - f.area;
    }

    FlowState next{ClosedCurve::from_complex(rp.points), state.time + dt, state.kind, lambda};
    return {std::move(next), stats};
}

TimeSeries run(const ClosedCurve& initial, const RunOptions& options) {
    if (!(options.dt > 0.0)) throw std::invalid_argument("run: dt must be positive");
    if (!(options.t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
    if (options.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");

    FlowState state = make_state(initial, options.kind);
    const long total_steps = std::lround(options.t_end / options.dt);
    if (total_steps < 1) throw std::invalid_argument("run: t_end shorter than one step");

    const double L0 = geometry_of(state.curve).length;
    const double A0 = signed_area(state.curve);

    StepOptions sopt;
    sopt.renormalize = options.renormalize;
    if (options.kind == FlowKind::length_preserving) sopt.renorm_target = L0;
    if (options.kind == FlowKind::area_preserving) sopt.renorm_target = A0;

    TimeSeries ts;

    auto record = [&](const FlowState& s) -> bool {
        SeriesRecord r;
        r.t = s.time;
        const auto g = geometry_of(s.curve);
        r.length = g.length;
        r.area = g.area;
        double mink = g.kappa[0];
        for (double k : g.kappa) mink = std::min(mink, k);
        r.min_kappa = mink;
        const auto inv = invariants_of(s.curve, 4);
        r.i_minus1 = inv.i_minus1;
        for (int l = 0; l < 5; ++l) r.i[static_cast<std::size_t>(l)] = inv.i[static_cast<std::size_t>(l)];
        const auto fr = fourier_frame(s.curve);
        r.center = fr.center;
        r.radius = fr.radius;
        r.sigma = fr.sigma;
        if (fr.radius > 0.0)
            r.d_h = hausdorff_to_disk(s.curve, DiskSpec{fr.center, fr.radius});
        if (g.area > 0.0) r.barycenter = barycenter(s.curve);
        if (options.check_simplicity) {
            r.simple = is_simple(s.curve);
            if (!r.simple) ts.self_intersection_seen = true;
        }
        bool finite = std::isfinite(r.length) && std::isfinite(r.area) && std::isfinite(r.i[0]);
        ts.records.push_back(r);
        if (options.keep_snapshots) ts.snapshots.push_back(s.curve);
        return finite;
    };

    for (long k = 0;; ++k) {
        if (k % options.record_every == 0 || k == total_steps) {
            if (!record(state)) {
                ts.status = RunStatus::aborted_nonfinite;
                ts.status_detail = "non-finite diagnostics at t = " + fmt(state.time);
                break;
            }
            if (options.kind == FlowKind::length_preserving && !options.renormalize) {
                const double drift = std::abs(ts.records.back().length - L0) / L0;
                if (drift > 0.01) {
                    ts.status = RunStatus::aborted_length_drift;
                    ts.status_detail = "length drift " + fmt(drift) + " exceeds 1% at t = " + fmt(state.time);
                    break;
                }
            }
        }
        if (k == total_steps) break;
        try {
            auto [next, stats] = step(state, options.dt, sopt);
            state = std::move(next);
        } catch (const FlowError& e) {
            ts.status = RunStatus::aborted_resolution;
            ts.status_detail = e.what();
            break;
        }
    }
    return ts;
}

double dAdt_residual(const FlowState& state, double dt_probe) {
    if (state.kind != FlowKind::length_preserving)
        throw std::invalid_argument("dAdt_residual: only defined for the length-preserving flow");
    if (!(dt_probe > 0.0)) throw std::invalid_argument("dAdt_residual: dt_probe must be positive");

    // The scheme drifts A at a rate proportional to its own step size, so the
    // probe integrates with substeps ~ dt_probe^2; the O(dt_probe^2) central
    // differencing error then dominates and the residual refines cleanly at
    // second order.
    const double inner = std::min(dt_probe / 16.0, 256.0 * dt_probe * dt_probe);
    const int sub = std::max(1, static_cast<int>(std::lround(dt_probe / inner)));
    const double h = dt_probe / sub;

    FlowState s = state;
    const double a0 = signed_area(s.curve);
    for (int i = 0; i < sub; ++i) s = step(s, h).first;
    const double i0_mid = invariants_of(s.curve, 0).i[0];
    for (int i = 0; i < sub; ++i) s = step(s, h).first;
    const double a2 = signed_area(s.curve);

    const double reference = i0_mid / kTwoPi;
    const double diff = (a2 - a0) / (2.0 * dt_probe);
    return std::abs(diff - reference) / std::max(reference, 1e-14);
}

}  // namespace curveflow
