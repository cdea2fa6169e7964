// curveflow command line: simulate | check | fuzz | report
//
// exit codes: 0 success, 1 usage/config error, 2 numerical sentinel
// (aborted run or violated inequality). CURVEFLOW_OUT sets the default
// output root.

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "curveflow/experiments.hpp"
#include "curveflow/flows.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/inequalities.hpp"
#include "curveflow/quantities.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace curveflow;

namespace {

std::string default_out_root() {
    if (const char* env = std::getenv("CURVEFLOW_OUT")) return env;
    return "runs";
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
}

ClosedCurve curve_from_initial(const json& init) {
    if (!init.is_object()) throw std::invalid_argument("initial: expected an object");
    const std::string type = init.at("type").get<std::string>();
    const std::size_t n = init.value("n", 256);

    if (type == "file") {
        reject_unknown_keys(init, {"type", "path", "n"}, "initial(file)");
        ClosedCurve curve = ClosedCurve::read_csv(init.at("path").get<std::string>());
        if (init.contains("n") && init.at("n").get<std::size_t>() != curve.size())
            return resample_uniform_arclength(curve, init.at("n").get<std::size_t>());
        return curve;
    }

    GeneratorSpec spec;
    spec.samples = n;
    if (type == "circle") {
        reject_unknown_keys(init, {"type", "center", "radius", "n"}, "initial(circle)");
        CircleSpec c;
        if (init.contains("center")) {
            c.center = {init.at("center").at(0).get<double>(), init.at("center").at(1).get<double>()};
        }
        c.radius = init.value("radius", 1.0);
        spec.shape = c;
    } else if (type == "ellipse") {
        reject_unknown_keys(init, {"type", "a", "b", "n"}, "initial(ellipse)");
        spec.shape = EllipseSpec{init.at("a").get<double>(), init.at("b").get<double>()};
    } else if (type == "polar") {
        reject_unknown_keys(init, {"type", "base", "modes", "n"}, "initial(polar)");
        PolarSpec ps;
        ps.base = init.value("base", 1.0);
        for (const auto& m : init.at("modes")) {
            reject_unknown_keys(m, {"k", "cos", "sin"}, "polar mode");
            ps.modes.push_back({m.at("k").get<int>(), m.value("cos", 0.0), m.value("sin", 0.0)});
        }
        spec.shape = ps;
    } else if (type == "fourier") {
        reject_unknown_keys(init, {"type", "modes", "n"}, "initial(fourier)");
        FourierSpec fsp;
        for (const auto& m : init.at("modes")) {
            reject_unknown_keys(m, {"k", "re", "im"}, "fourier mode");
            fsp.modes.push_back({m.at("k").get<int>(), cdouble{m.value("re", 0.0), m.value("im", 0.0)}});
        }
        spec.shape = fsp;
    } else {
        throw std::invalid_argument("initial: unknown type '" + type + "'");
    }
    return make_curve(spec);
}

struct SimulateOverrides {
    std::optional<std::string> out;
    std::optional<bool> renormalize;
    std::optional<std::uint64_t> seed;
    int workers = 1;
};

int run_one(const json& cfg, const std::string& out_dir, const SimulateOverrides& ov) {
    reject_unknown_keys(cfg, {"name", "kind", "initial", "dt", "t_end", "record_every", "seed",
                              "renormalize", "keep_snapshots", "check_simplicity"},
                        "run config");
    RunOptions ro;
    ro.kind = flow_kind_from_string(cfg.at("kind").get<std::string>());
    ro.dt = cfg.at("dt").get<double>();
    ro.t_end = cfg.at("t_end").get<double>();
    ro.record_every = cfg.value("record_every", 10);
    ro.renormalize = ov.renormalize.value_or(cfg.value("renormalize", false));
    ro.keep_snapshots = cfg.value("keep_snapshots", true);
    ro.check_simplicity = cfg.value("check_simplicity", true);

    ClosedCurve initial = curve_from_initial(cfg.at("initial"));
    TimeSeries series = run(initial, ro);

    if (series.self_intersection_seen)
        std::cerr << "warning: self-intersection detected during the run (continuing)\n";

    ExperimentSummary summary = analyze(series);
    json echo = cfg;
    echo["renormalize"] = ro.renormalize;
    if (ov.seed) echo["seed"] = *ov.seed;
    const auto files = emit_report(series, summary, out_dir, echo.dump());
    for (const auto& f : files) std::cout << f << "\n";

    if (series.status != RunStatus::healthy) {
        std::cerr << "run aborted: " << series.status_detail << "\n";
        return 2;
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, const SimulateOverrides& ov) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return 1;
    }
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const std::exception& e) {
        std::cerr << "config parse error: " << e.what() << "\n";
        return 1;
    }

    try {
        const std::string root = ov.out.value_or(default_out_root());
        if (cfg.contains("runs")) {
            reject_unknown_keys(cfg, {"runs"}, "batch config");
            std::vector<json> runs;
            std::vector<std::string> dirs;
            int index = 0;
            for (const auto& one : cfg.at("runs")) {
                const std::string name = one.value("name", "run" + std::to_string(index++));
                runs.push_back(one);
                dirs.push_back((fs::path(root) / name).string());
            }
            std::vector<int> codes(runs.size(), 0);
            if (ov.workers <= 1 || runs.size() < 2) {
                for (std::size_t i = 0; i < runs.size(); ++i) codes[i] = run_one(runs[i], dirs[i], ov);
            } else {
                // batch runs are independent; partition across workers
                std::vector<std::thread> pool;
                std::atomic<std::size_t> next{0};
                for (int w = 0; w < std::min<int>(ov.workers, static_cast<int>(runs.size())); ++w) {
                    pool.emplace_back([&] {
                        for (std::size_t i = next.fetch_add(1); i < runs.size(); i = next.fetch_add(1))
                            codes[i] = run_one(runs[i], dirs[i], ov);
                    });
                }
                for (auto& th : pool) th.join();
            }
            int worst = 0;
            for (int code : codes) worst = std::max(worst, code);
            return worst;
        }
        return run_one(cfg, root, ov);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const CurveError& e) {
        std::cerr << "curve error: " << e.what() << "\n";
        return 1;
    } catch (const FlowError& e) {
        std::cerr << "flow sentinel: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_check(const std::string& curve_path, const std::vector<std::string>& check_names) {
    std::optional<ClosedCurve> curve;
    try {
        curve = ClosedCurve::read_csv(curve_path);
    } catch (const std::exception& e) {
        std::cerr << "curve error: " << e.what() << "\n";
        return 1;
    }

    std::vector<CheckSpec> checks;
    if (check_names.empty()) {
        checks = default_checks();
    } else {
        for (const auto& name : check_names) checks.push_back(CheckSpec::parse(name));
    }

    bool all_ok = true;
    for (const auto& spec : checks) {
        std::vector<InequalityReport> reports;
        switch (spec.kind) {
            case CheckSpec::Kind::deficit: {
                const auto pair = check_deficit_bounds(*curve);
                reports.assign(pair.begin(), pair.end());
                break;
            }
            case CheckSpec::Kind::interpolation:
                reports.push_back(check_interpolation(*curve, spec.p1, spec.p2));
                break;
            case CheckSpec::Kind::gn_i:
                reports.push_back(check_gn_I(*curve, spec.p1, spec.p2));
                break;
            case CheckSpec::Kind::gn_j:
                reports.push_back(check_gn_J(*curve, spec.p1, spec.p2, spec.p3));
                break;
            case CheckSpec::Kind::wirtinger:
                reports.push_back(check_wirtinger(*curve, spec.p1));
                break;
        }
        for (const auto& r : reports) {
            std::cout << r.to_json() << "\n";
            if (!r.satisfied) all_ok = false;
        }
    }
    return all_ok ? 0 : 2;
}

int cmd_fuzz(const FuzzOptions& options, const std::string& out_dir) {
    FuzzOptions opt = options;
    opt.out_dir = out_dir;
    const auto report = fuzz_inequalities(opt);
    const std::string text = report.to_json();
    std::cout << text << "\n";
    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        const std::string path = (fs::path(opt.out_dir) / "fuzz_report.json").string();
        std::ofstream(path) << text << "\n";
    }
    return report.violations.empty() ? 0 : 2;
}

int cmd_report(const std::string& series_path, const std::string& out_dir) {
    TimeSeries series = TimeSeries::read_csv(series_path);
    const auto summary = analyze(series);
    const auto files =
        emit_report(series, summary, out_dir, json{{"source_series", series_path}}.dump());
    for (const auto& f : files) std::cout << f << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-local curvature flows of closed plane curves: simulation and diagnostics"};
    app.require_subcommand(1);

    auto* sim = app.add_subcommand("simulate", "run a flow from a JSON config and emit reports");
    std::string config_path;
    SimulateOverrides ov;
    std::string sim_out;
    bool sim_renorm = false;
    sim->add_option("--config", config_path, "JSON run configuration")->required();
    sim->add_option("--out", sim_out, "output directory (default $CURVEFLOW_OUT or ./runs)");
    std::int64_t sim_seed = -1;
    sim->add_option("--seed", sim_seed, "override the config seed (recorded in the summary)");
    sim->add_option("--workers", ov.workers, "worker count for batch runs");
    sim->add_flag("--renormalize", sim_renorm, "pin the conserved quantity each step");

    auto* chk = app.add_subcommand("check", "evaluate the inequality suite on one curve CSV");
    std::string curve_path;
    std::vector<std::string> check_names;
    chk->add_option("--curve", curve_path, "curve CSV with header x,y")->required();
    chk->add_option("--checks", check_names,
                    "checks, e.g. deficit interpolation:0,1 gn_j:0,3,1 wirtinger:0");

    auto* fz = app.add_subcommand("fuzz", "seeded random-curve sweep of the inequality suite");
    FuzzOptions fuzz_opt;
    std::string fuzz_out;
    std::vector<std::string> fuzz_checks;
    fz->add_option("--trials", fuzz_opt.trials, "number of fuzz curves")->required();
    fz->add_option("--seed", fuzz_opt.seed, "RNG seed");
    fz->add_option("--generator", fuzz_opt.generator, "fourier (default) or circle");
    fz->add_option("--samples", fuzz_opt.samples, "curve sample count (power of two >= 16)");
    fz->add_option("--workers", fuzz_opt.workers, "parallel trial workers (deterministic)");
    fz->add_option("--checks", fuzz_checks, "check list (defaults to the full suite)");
    fz->add_option("--out", fuzz_out, "directory for the report and worst-curve CSVs");

    auto* rep = app.add_subcommand("report", "re-run post-processing on an existing series CSV");
    std::string series_path, report_out;
    rep->add_option("--series", series_path, "series CSV from a previous run")->required();
    rep->add_option("--out", report_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (!sim_out.empty()) ov.out = sim_out;
            if (sim_renorm) ov.renormalize = true;
            if (sim_seed >= 0) ov.seed = static_cast<std::uint64_t>(sim_seed);
            return cmd_simulate(config_path, ov);
        }
        if (chk->parsed()) return cmd_check(curve_path, check_names);
        if (fz->parsed()) {
            for (const auto& name : fuzz_checks) fuzz_opt.checks.push_back(CheckSpec::parse(name));
            return cmd_fuzz(fuzz_opt, fuzz_out.empty() ? default_out_root() + "/fuzz" : fuzz_out);
        }
        if (rep->parsed())
            return cmd_report(series_path,
                              report_out.empty() ? default_out_root() + "/report" : report_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
