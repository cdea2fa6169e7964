#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curveflow/experiments.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/geometry.hpp"
#include "oracles.hpp"

using namespace curveflow;
using oracles::kPi;

namespace {

TimeSeries flower_run(double t_end = 1.0, bool snapshots = true) {
    PolarSpec ps;
    ps.modes.push_back({3, 0.1, 0.0});
    RunOptions ro;
    ro.kind = FlowKind::length_preserving;
    ro.dt = 1e-4;
    ro.t_end = t_end;
    ro.record_every = 25;
    ro.keep_snapshots = snapshots;
    ro.check_simplicity = false;
    return run(make_curve({ps, 256}), ro);
}

}  // namespace

TEST_CASE("fit_exponential recovers exact log-linear data") {
    std::vector<double> t, q;
    for (int i = 0; i <= 200; ++i) {
        t.push_back(0.01 * i);
        q.push_back(5.0 * std::exp(-3.0 * 0.01 * i));
    }
    const auto fit = fit_exponential_samples(t, q, "synthetic", {0.0, 2.0});
    CHECK(fit.ok);
    CHECK(fit.amplitude == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fit_exponential on modulated decay reports an honest r^2 < 1") {
    std::vector<double> t, q;
    for (int i = 0; i <= 400; ++i) {
        const double x = 0.02 * i;
        t.push_back(x);
        q.push_back(std::exp(-x) * (2.0 + std::sin(x)));
    }
    const auto fit = fit_exponential_samples(t, q, "modulated", {0.0, 8.0});
    CHECK(fit.ok);
    CHECK(fit.rate > 0.9);
    CHECK(fit.rate < 1.1);
    CHECK(fit.r_squared < 1.0);
    CHECK(fit.r_squared > 0.9);

    // brute-force least-squares oracle on the same points
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double y = std::log(q[i]);
        sx += t[i];
        sy += y;
        sxx += t[i] * t[i];
        sxy += t[i] * y;
        n += 1.0;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(fit.rate == doctest::Approx(-slope).epsilon(1e-12));
}

TEST_CASE("fit_exponential refuses windows without enough samples above the floor") {
    std::vector<double> t, q;
    for (int i = 0; i < 5; ++i) {
        t.push_back(i);
        q.push_back(std::exp(-static_cast<double>(i)));
    }
    const auto fit = fit_exponential_samples(t, q, "short", {0.0, 10.0});
    CHECK_FALSE(fit.ok);
    CHECK(fit.note.find("refused") != std::string::npos);

    std::vector<double> q2(40, 1e-16);  // below the 1e-14 floor
    std::vector<double> t2(40);
    for (int i = 0; i < 40; ++i) t2[static_cast<std::size_t>(i)] = i;
    CHECK_FALSE(fit_exponential_samples(t2, q2, "floor", {0.0, 40.0}).ok);
}

TEST_CASE("unwrap_angles lifts phase jumps") {
    std::vector<double> wrapped = {6.2, 0.1, 0.3, 6.28, 6.0};
    const auto u = unwrap_angles(wrapped);
    CHECK(u[0] == doctest::Approx(6.2));
    CHECK(u[1] == doctest::Approx(2.0 * kPi + 0.1).epsilon(1e-12));
    CHECK(u[2] == doctest::Approx(2.0 * kPi + 0.3).epsilon(1e-12));
    CHECK(u[3] == doctest::Approx(6.28).epsilon(1e-12));
    CHECK(u[4] == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("length-preserving flower run: rate floor and r^2 across orders") {
    const auto ts = flower_run(1.2, false);
    REQUIRE(ts.status == RunStatus::healthy);
    const auto w = default_fit_window(ts);
    const double L = ts.records.front().length;
    const double floor = 16.0 * kPi * kPi / (L * L);
    for (const std::string q : {"i_minus1", "i0", "i1", "i2", "i3", "i4"}) {
        const auto fit = fit_exponential(ts, q, w);
        REQUIRE(fit.ok);
        CHECK(fit.rate > 0.0);
        CHECK(fit.r_squared >= 0.99);
        if (q == "i_minus1") CHECK(fit.rate >= 0.95 * floor);
    }
}

TEST_CASE("detect_convexity_time") {
    {
        RunOptions ro;
        ro.kind = FlowKind::length_preserving;
        ro.dt = 1e-3;
        ro.t_end = 0.05;
        ro.record_every = 10;
        ro.keep_snapshots = false;
        const auto ts = run(make_curve({EllipseSpec{1.5, 2.0 / 3.0}, 256}), ro);
        const auto conv = detect_convexity_time(ts);
        REQUIRE(conv.t_star.has_value());
        CHECK(*conv.t_star == 0.0);  // convex initial data
        CHECK_FALSE(conv.lost_after_gain);
    }
    {
        // synthetic: convexity gained, lost, regained
        TimeSeries ts;
        for (int i = 0; i < 6; ++i) {
            SeriesRecord r;
            r.t = i;
            r.min_kappa = (i == 0 || i == 3) ? -1.0 : 1.0;
            ts.records.push_back(r);
        }
        const auto conv = detect_convexity_time(ts);
        REQUIRE(conv.t_star.has_value());
        CHECK(*conv.t_star == 4.0);
        CHECK(conv.lost_after_gain);
    }
    {
        // never convex at the tail
        TimeSeries ts;
        for (int i = 0; i < 4; ++i) {
            SeriesRecord r;
            r.t = i;
            r.min_kappa = -1.0;
            ts.records.push_back(r);
        }
        CHECK_FALSE(detect_convexity_time(ts).t_star.has_value());
    }
    {
        // aborted series reports none with the reason
        TimeSeries ts;
        SeriesRecord r;
        r.min_kappa = 1.0;
        ts.records.push_back(r);
        ts.status = RunStatus::aborted_resolution;
        const auto conv = detect_convexity_time(ts);
        CHECK_FALSE(conv.t_star.has_value());
        CHECK(conv.note.find("aborted") != std::string::npos);
    }
}

TEST_CASE("limit_circle: circle runs reproduce their parameters") {
    RunOptions ro;
    ro.kind = FlowKind::length_preserving;
    ro.dt = 1e-3;
    ro.t_end = 0.1;
    ro.record_every = 10;
    ro.keep_snapshots = false;
    const auto ts = run(make_curve({CircleSpec{{3.0, -2.0}, 1.5}, 256}), ro);
    const auto lc = limit_circle(ts);
    CHECK(lc.center.x == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(lc.center.y == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(lc.radius == doctest::Approx(1.5).epsilon(1e-8));
    CHECK(lc.radius == doctest::Approx(lc.length / (2.0 * kPi)).epsilon(1e-12));
}

TEST_CASE("limit_circle refuses undecayed series") {
    RunOptions ro;
    ro.kind = FlowKind::length_preserving;
    ro.dt = 1e-4;
    ro.t_end = 0.01;
    ro.record_every = 5;
    ro.keep_snapshots = false;
    const auto ts = run(make_curve({EllipseSpec{1.5, 2.0 / 3.0}, 256}), ro);
    CHECK_THROWS_AS(limit_circle(ts), std::runtime_error);
}

TEST_CASE("flower run: limit circle radius is pinned by length conservation") {
    const auto ts = flower_run(1.0, true);
    REQUIRE(ts.status == RunStatus::healthy);
    const auto lc = limit_circle(ts);
    const double L0 = ts.records.front().length;
    CHECK(lc.radius == doctest::Approx(L0 / (2.0 * kPi)).epsilon(1e-4));

    const auto report = verify_limit_circle(ts, lc);
    CHECK(report.all_pass);
    int floor_items = 0, fit_items = 0;
    for (const auto& item : report.items) {
        CHECK(item.pass);
        if (item.status == "floor") ++floor_items;
        if (item.status == "fit") ++fit_items;
    }
    // symmetric initial data parks items 1, 3 and 7 at the numerical floor
    CHECK(floor_items >= 3);
    CHECK(fit_items >= 3);
}

TEST_CASE("verify_limit_circle marks snapshot-dependent items on snapshot-free series") {
    const auto ts = flower_run(1.0, false);
    const auto lc = limit_circle(ts);
    const auto report = verify_limit_circle(ts, lc);
    bool saw_unverifiable_item4 = false;
    for (const auto& item : report.items)
        if (item.id == 4 && item.status == "unverifiable") saw_unverifiable_item4 = true;
    CHECK(saw_unverifiable_item4);
}

TEST_CASE("emit_report: empty series writes a summary only") {
    namespace fs = std::filesystem;
    const std::string dir = (fs::temp_directory_path() / "curveflow_empty_report").string();
    fs::remove_all(dir);
    TimeSeries empty;
    const auto files = emit_report(empty, analyze(empty), dir, "{}");
    REQUIRE(files.size() == 1);
    CHECK(files[0].find("summary.json") != std::string::npos);
    CHECK(fs::exists(files[0]));
}

TEST_CASE("emit_report: full run emits CSV, JSON and three SVGs, deterministically") {
    namespace fs = std::filesystem;
    const auto ts = flower_run(0.5, true);
    const auto summary = analyze(ts);

    auto emit_to = [&](const std::string& dir) {
        fs::remove_all(dir);
        return emit_report(ts, summary, dir, "{\"purpose\": \"test\"}");
    };
    const std::string dir_a = (fs::temp_directory_path() / "curveflow_report_a").string();
    const std::string dir_b = (fs::temp_directory_path() / "curveflow_report_b").string();
    const auto files_a = emit_to(dir_a);
    const auto files_b = emit_to(dir_b);
    REQUIRE(files_a.size() == 5);  // series.csv summary.json invariants.svg hausdorff.svg curves.svg
    REQUIRE(files_b.size() == 5);

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    for (std::size_t i = 0; i < files_a.size(); ++i) {
        CHECK(fs::exists(files_a[i]));
        CHECK(slurp(files_a[i]) == slurp(files_b[i]));  // byte-identical
    }

    // series round-trips through CSV
    const auto back = TimeSeries::read_csv(files_a[0]);
    REQUIRE(back.records.size() == ts.records.size());
    CHECK(back.records.back().i_minus1 == ts.records.back().i_minus1);
    CHECK(back.records.front().length == ts.records.front().length);
}

TEST_CASE("series CSV rejects malformed input") {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "curveflow_bad_series.csv").string();
    std::ofstream(path) << "t,L,A\n1,2,3\n";
    CHECK_THROWS_AS(TimeSeries::read_csv(path), std::runtime_error);
}
