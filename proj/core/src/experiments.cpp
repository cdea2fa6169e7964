#include "curveflow/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "curveflow/quantities.hpp"
#include "curveflow/spectral.hpp"
#include "curveflow/svg.hpp"
#include "json.hpp"

namespace curveflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFitFloor = 1e-14;   // below this, doubles are noise
constexpr double kWindowFloor = 1e-10;

double column_value(const SeriesRecord& r, const std::string& name) {
    if (name == "t") return r.t;
    if (name == "L") return r.length;
    if (name == "A") return r.area;
    if (name == "i_minus1") return r.i_minus1;
    if (name == "i0") return r.i[0];
    if (name == "i1") return r.i[1];
    if (name == "i2") return r.i[2];
    if (name == "i3") return r.i[3];
    if (name == "i4") return r.i[4];
    if (name == "min_kappa") return r.min_kappa;
    if (name == "cx") return r.center.x;
    if (name == "cy") return r.center.y;
    if (name == "r") return r.radius;
    if (name == "sigma") return r.sigma;
    if (name == "dH") return r.d_h;
    if (name == "bx") return r.barycenter.x;
    if (name == "by") return r.barycenter.y;
    throw std::invalid_argument("unknown series column: '" + name + "'");
}

}  // namespace

std::vector<double> series_column(const TimeSeries& series, const std::string& name) {
    std::vector<double> out;
    out.reserve(series.records.size());
    for (const auto& r : series.records) out.push_back(column_value(r, name));
    return out;
}

std::vector<double> unwrap_angles(const std::vector<double>& wrapped) {
    std::vector<double> out(wrapped.size());
    if (wrapped.empty()) return out;
    out[0] = wrapped[0];
    for (std::size_t i = 1; i < wrapped.size(); ++i) {
        double d = wrapped[i] - wrapped[i - 1];
        d -= kTwoPi * std::round(d / kTwoPi);
        out[i] = out[i - 1] + d;
    }
    return out;
}

FitWindow default_fit_window(const TimeSeries& series) {
    FitWindow w;
    const auto& rec = series.records;
    if (rec.empty()) return w;
    w.t_begin = rec.front().t;
    w.t_end = rec.back().t;
    const double q0 = rec.front().i_minus1;
    for (const auto& r : rec) {
        if (r.i_minus1 <= 0.5 * q0) {
            w.t_begin = r.t;
            break;
        }
    }
    for (auto it = rec.rbegin(); it != rec.rend(); ++it) {
        if (it->i_minus1 >= kWindowFloor) {
            w.t_end = it->t;
            break;
        }
    }
    return w;
}

DecayFit fit_exponential_samples(const std::vector<double>& t, const std::vector<double>& q,
                                 const std::string& name, FitWindow window) {
    DecayFit fit;
    fit.quantity = name;
    fit.t_begin = window.t_begin;
    fit.t_end = window.t_end;

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.size() && i < q.size(); ++i) {
        if (t[i] < window.t_begin || t[i] > window.t_end) continue;
        if (!(q[i] > kFitFloor)) continue;
        xs.push_back(t[i]);
        ys.push_back(std::log(q[i]));
    }
    fit.samples_used = static_cast<int>(xs.size());
    if (xs.size() < 10) {
        fit.note = "refused: only " + std::to_string(xs.size()) +
                   " samples above the 1e-14 floor in the window (need 10)";
        return fit;
    }

    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::abs(denom) > 0.0)) {
        fit.note = "refused: degenerate time window";
        return fit;
    }
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;

    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double pred = intercept + slope * xs[i];
        ss_res += (ys[i] - pred) * (ys[i] - pred);
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }
    fit.amplitude = std::exp(intercept);
    fit.rate = -slope;
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.ok = true;
    return fit;
}

DecayFit fit_exponential(const TimeSeries& series, const std::string& quantity, FitWindow window) {
    return fit_exponential_samples(series_column(series, "t"), series_column(series, quantity),
                                   quantity, window);
}

ConvexityDetection detect_convexity_time(const TimeSeries& series) {
    ConvexityDetection out;
    const auto& rec = series.records;
    if (rec.empty()) {
        out.note = "empty series";
        return out;
    }
    if (series.status != RunStatus::healthy) {
        out.note = "series not healthy: " + to_string(series.status);
        return out;
    }
    std::ptrdiff_t last_nonpos = -1;
    bool seen_positive = false;
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (rec[i].min_kappa > 0.0) {
            seen_positive = true;
        } else {
            if (seen_positive) out.lost_after_gain = true;
            last_nonpos = static_cast<std::ptrdiff_t>(i);
        }
    }
    if (last_nonpos + 1 >= static_cast<std::ptrdiff_t>(rec.size())) {
        out.note = "min kappa not positive at the final record";
        return out;
    }
    out.t_star = rec[static_cast<std::size_t>(last_nonpos + 1)].t;
    if (out.lost_after_gain) out.note = "convexity was lost and regained before T*";
    return out;
}

LimitCircle limit_circle(const TimeSeries& series) {
    const auto& rec = series.records;
    if (rec.size() < 3) throw std::runtime_error("limit_circle: too few records");
    if (!(rec.back().i_minus1 < 1e-6))
        throw std::runtime_error("limit_circle: I_-1 has not decayed below 1e-6 (last = " +
                                 std::to_string(rec.back().i_minus1) + ")");
    const std::size_t tail = std::max<std::size_t>(5, rec.size() / 10);
    const std::size_t begin = rec.size() > tail ? rec.size() - tail : 0;

    const auto sigma_u = unwrap_angles(series_column(series, "sigma"));
    LimitCircle lc;
    double n = 0.0;
    for (std::size_t i = begin; i < rec.size(); ++i) {
        lc.center += rec[i].center;
        lc.sigma += sigma_u[i];
        lc.length += rec[i].length;
        lc.area += rec[i].area;
        n += 1.0;
    }
    lc.center = lc.center * (1.0 / n);
    lc.sigma /= n;
    lc.length /= n;
    lc.area /= n;
    lc.radius = lc.length / kTwoPi;
    return lc;
}

namespace {

ChecklistItem fit_or_floor(int id, const std::string& name, const std::vector<double>& t,
                           const std::vector<double>& q, double scale, double r2_threshold,
                           double quantity_floor = 0.0) {
    ChecklistItem item;
    item.id = id;
    item.name = name;
    item.final_value = q.empty() ? 0.0 : q.back();
    if (q.empty()) {
        item.status = "unverifiable";
        return item;
    }
    double qmax = 0.0;
    for (double v : q) qmax = std::max(qmax, v);
    const double floor_abs = std::max({1e-10 * scale, kFitFloor, quantity_floor});
    if (qmax <= floor_abs) {
        item.status = "floor";
        item.pass = true;  // the deviation never rose above numerical zero
        return item;
    }
    FitWindow w;
    w.t_begin = t.front();
    w.t_end = t.back();
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] <= 0.5 * qmax) {
            w.t_begin = t[i];
            break;
        }
    }
    // stop fitting where the quantity meets its own floor (e.g. the polygon
    // sagitta for Hausdorff distances), not the floating-point floor
    const double tail_floor = std::max({1e-12 * scale, kFitFloor, quantity_floor});
    for (std::size_t i = q.size(); i-- > 0;) {
        if (q[i] >= tail_floor) {
            w.t_end = t[i];
            break;
        }
    }
    item.fit = fit_exponential_samples(t, q, name, w);
    if (!item.fit.ok) {
        item.status = "unverifiable";
        item.pass = false;
        return item;
    }
    item.status = "fit";
    item.pass = item.fit.rate > 0.0 && item.fit.r_squared >= r2_threshold;
    if (!item.pass) item.status = "failed";
    return item;
}

/// C^k sup distances of the normalized snapshot to the limit parametrization.
std::array<std::vector<double>, 3> normalized_distances(const TimeSeries& series,
                                                        const LimitCircle& limit) {
    std::array<std::vector<double>, 3> out;
    for (std::size_t si = 0; si < series.snapshots.size(); ++si) {
        const auto& curve = series.snapshots[si];
        const double sigma = series.records[si].sigma;
        auto m = spectral::modes(curve.complex_points());
        const std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i) {
            const int k = spectral::wavenumber(i, n);
            const double ang = -static_cast<double>(k) * sigma;
            m[i] *= cdouble{std::cos(ang), std::sin(ang)};
        }
        m[0] -= cdouble{limit.center.x, limit.center.y};
        m[1] -= limit.radius;
        for (int order = 0; order < 3; ++order) {
            auto g = spectral::grid(order == 0 ? m : spectral::derivative(m, order));
            double sup = 0.0;
            for (const auto& v : g) sup = std::max(sup, std::abs(v));
            out[static_cast<std::size_t>(order)].push_back(sup);
        }
    }
    return out;
}

}  // namespace

ChecklistReport verify_limit_circle(const TimeSeries& series, const LimitCircle& limit) {
    ChecklistReport report;
    const auto t = series_column(series, "t");
    const std::size_t n = series.records.size();
    const double r2 = 0.95;

    std::vector<double> q1(n), q2(n), q3(n), q7(n);
    const auto sigma_u = unwrap_angles(series_column(series, "sigma"));
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = series.records[i];
        q1[i] = (r.center - limit.center).norm();
        q2[i] = std::abs(r.radius - limit.radius);
        q3[i] = std::abs(sigma_u[i] - limit.sigma);
        q7[i] = r.area * (r.barycenter - r.center).norm();
    }
    report.items.push_back(fit_or_floor(1, "center_deviation", t, q1, limit.radius, r2));
    report.items.push_back(fit_or_floor(2, "radius_deviation", t, q2, limit.radius, r2));
    report.items.push_back(fit_or_floor(3, "phase_deviation", t, q3, 1.0, r2));

    if (!series.snapshots.empty() && series.snapshots.size() == n) {
        const auto dist = normalized_distances(series, limit);
        const double base = limit.radius;
        report.items.push_back(fit_or_floor(4, "c0_distance", t, dist[0], base, r2));
        report.items.push_back(fit_or_floor(4, "c1_distance", t, dist[1], base * kTwoPi, r2));
        report.items.push_back(fit_or_floor(4, "c2_distance", t, dist[2], base * kTwoPi * kTwoPi, r2));
    } else {
        ChecklistItem item;
        item.id = 4;
        item.name = "ck_distance";
        item.status = "unverifiable";
        report.items.push_back(item);
    }

    {
        ChecklistItem item;
        item.id = 5;
        item.name = "convexification_time";
        const auto conv = detect_convexity_time(series);
        if (conv.t_star && !conv.lost_after_gain) {
            item.status = "detected";
            item.pass = true;
            item.final_value = *conv.t_star;
        } else {
            item.status = conv.t_star ? "failed" : "unverifiable";
        }
        report.items.push_back(item);
    }

    if (!series.snapshots.empty() && series.snapshots.size() == n) {
        std::vector<double> q6(n);
        const DiskSpec limit_disk{limit.center, limit.radius};
        for (std::size_t i = 0; i < n; ++i)
            q6[i] = hausdorff_to_disk(series.snapshots[i], limit_disk);
        // the discrete Hausdorff distance bottoms out at the inscribed-polygon
        // sagitta (pi/N)^2/2 * r; fitting below that is fitting the mesh
        const double npts = static_cast<double>(series.snapshots.front().size());
        const double sagitta = 0.5 * (std::numbers::pi / npts) * (std::numbers::pi / npts) * limit.radius;
        report.items.push_back(
            fit_or_floor(6, "hausdorff_to_limit_disk", t, q6, limit.radius, r2, 3.0 * sagitta));
    } else {
        // best effort from the recorded distance to the instantaneous disk
        auto item = fit_or_floor(6, "hausdorff_to_fitted_disk", t, series_column(series, "dH"),
                                 limit.radius, r2);
        item.fit.note += (item.fit.note.empty() ? "" : "; ");
        item.fit.note += "no snapshots: fitted against the instantaneous disk";
        report.items.push_back(item);
    }

    report.items.push_back(fit_or_floor(7, "scaled_barycenter_deviation", t, q7,
                                        limit.area * limit.radius, r2));

    report.all_pass = true;
    for (const auto& item : report.items)
        if (!item.pass) report.all_pass = false;
    return report;
}

ExperimentSummary analyze(const TimeSeries& series) {
    ExperimentSummary s;
    s.status = to_string(series.status);
    if (series.records.empty()) return s;
    const auto w = default_fit_window(series);
    for (const std::string name : {"i_minus1", "i0", "i1", "i2", "i3", "i4"})
        s.fits.push_back(fit_exponential(series, name, w));
    s.convexity = detect_convexity_time(series);
    try {
        s.limit = limit_circle(series);
        s.limit_circle_checklist = verify_limit_circle(series, *s.limit);
    } catch (const std::exception& e) {
        s.status += std::string("; limit circle unavailable: ") + e.what();
    }
    return s;
}

namespace {

nlohmann::ordered_json fit_json(const DecayFit& f) {
    nlohmann::ordered_json j;
    j["quantity"] = f.quantity;
    j["window"] = {f.t_begin, f.t_end};
    j["C"] = f.amplitude;
    j["lambda"] = f.rate;
    j["r_squared"] = f.r_squared;
    j["samples"] = f.samples_used;
    j["ok"] = f.ok;
    if (!f.note.empty()) j["note"] = f.note;
    return j;
}

}  // namespace

std::vector<std::string> emit_report(const TimeSeries& series, const ExperimentSummary& summary,
                                     const std::string& out_dir, const std::string& config_echo) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    fs::create_directories(out_dir);

    nlohmann::ordered_json j;
    try {
        j["run_config"] = nlohmann::ordered_json::parse(config_echo);
    } catch (const std::exception&) {
        j["run_config"] = config_echo;
    }
    j["status"] = summary.status;

    if (series.records.empty()) {
        const std::string path = (fs::path(out_dir) / "summary.json").string();
        std::ofstream(path) << j.dump(2) << "\n";
        written.push_back(path);
        return written;
    }

    j["fits"] = nlohmann::ordered_json::array();
    for (const auto& f : summary.fits) j["fits"].push_back(fit_json(f));
    if (summary.convexity.t_star)
        j["T_star"] = *summary.convexity.t_star;
    else
        j["T_star"] = nullptr;
    if (!summary.convexity.note.empty()) j["convexity_note"] = summary.convexity.note;
    if (summary.limit) {
        j["limit_circle"] = {{"cx", summary.limit->center.x}, {"cy", summary.limit->center.y},
                             {"r", summary.limit->radius},    {"sigma", summary.limit->sigma},
                             {"L", summary.limit->length},    {"A", summary.limit->area}};
    } else {
        j["limit_circle"] = nullptr;
    }
    if (summary.limit_circle_checklist) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& item : summary.limit_circle_checklist->items) {
            nlohmann::ordered_json ji;
            ji["item"] = item.id;
            ji["name"] = item.name;
            ji["status"] = item.status;
            ji["pass"] = item.pass;
            ji["final"] = item.final_value;
            if (item.status == "fit" || item.status == "failed") ji["fit"] = fit_json(item.fit);
            arr.push_back(ji);
        }
        j["limit_circle_checklist"] = arr;
        j["limit_circle_all_pass"] = summary.limit_circle_checklist->all_pass;
    }

    const std::string csv_path = (fs::path(out_dir) / "series.csv").string();
    series.write_csv(csv_path);
    written.push_back(csv_path);

    const std::string json_path = (fs::path(out_dir) / "summary.json").string();
    std::ofstream(json_path) << j.dump(2) << "\n";
    written.push_back(json_path);

    const auto t = series_column(series, "t");
    {
        svg::LineChart chart;
        chart.title = "scale-invariant diagnostics";
        chart.x_label = "t";
        chart.y_label = "I";
        chart.log_y = true;
        for (const std::string name : {"i_minus1", "i0", "i1", "i2", "i3", "i4"})
            chart.traces.push_back({name, t, series_column(series, name)});
        const std::string path = (fs::path(out_dir) / "invariants.svg").string();
        svg::write_line_chart(chart, path);
        written.push_back(path);
    }
    {
        svg::LineChart chart;
        chart.title = "Hausdorff distance to fitted disk";
        chart.x_label = "t";
        chart.y_label = "d_H";
        chart.log_y = true;
        chart.traces.push_back({"dH", t, series_column(series, "dH")});
        const std::string path = (fs::path(out_dir) / "hausdorff.svg").string();
        svg::write_line_chart(chart, path);
        written.push_back(path);
    }
    if (!series.snapshots.empty()) {
        svg::CurveSketch sketch;
        sketch.title = "curve snapshots";
        const std::size_t count = series.snapshots.size();
        std::vector<std::size_t> picks;
        for (int i = 0; i < 5; ++i) picks.push_back(count * static_cast<std::size_t>(i) / 5);
        picks.push_back(count - 1);
        std::size_t last = static_cast<std::size_t>(-1);
        for (std::size_t idx : picks) {
            if (idx == last) continue;
            last = idx;
            svg::Trace tr;
            char label[32];
            std::snprintf(label, sizeof label, "t=%.4g", series.records[idx].t);
            tr.label = label;
            for (const auto& p : series.snapshots[idx].points()) {
                tr.x.push_back(p.x);
                tr.y.push_back(p.y);
            }
            sketch.curves.push_back(std::move(tr));
        }
        const std::string path = (fs::path(out_dir) / "curves.svg").string();
        svg::write_curve_sketch(sketch, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace curveflow
