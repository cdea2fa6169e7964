#include "curveflow/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "curveflow/geometry.hpp"
#include "curveflow/quantities.hpp"
#include "curveflow/rng.hpp"
#include "json.hpp"

namespace curveflow {

namespace {

constexpr double kRelTol = 1e-8;
constexpr double kAbsTol = 1e-12;
constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

double clamp0(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

InequalityReport InequalityReport::make(std::string name, double lhs, double rhs) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = rhs - lhs;
    if (lhs <= kAbsTol && rhs <= kAbsTol) {
        r.ratio = 0.0;  // the 0/0 circle convention: equality case, satisfied
    } else if (rhs == 0.0) {
        r.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        r.ratio = lhs / rhs;
    }
    r.satisfied = lhs <= rhs * (1.0 + kRelTol) + kAbsTol;
    return r;
}

std::string InequalityReport::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["margin"] = margin;
    j["ratio"] = std::isfinite(ratio) ? nlohmann::ordered_json(ratio) : nlohmann::ordered_json("inf");
    j["satisfied"] = satisfied;
    return j.dump();
}

double locked_constant(const std::string& check_name) {
    // Empirical envelopes from the seeded 1000-trial fuzz run, locked with a
    // 1.25 safety factor; regressions move these only with justification.
    static const std::map<std::string, double> table = {
        {"interpolation_0_1", 1.30}, {"interpolation_0_2", 1.30}, {"interpolation_1_2", 1.30},
        {"gn_j_0_3_1", 1.30},        {"gn_j_0_4_1", 1.60},        {"gn_j_1_3_2", 1.30},
    };
    auto it = table.find(check_name);
    if (it != table.end()) return it->second;
    if (check_name.rfind("interpolation", 0) == 0 || check_name.rfind("gn_j", 0) == 0)
        return 8.0;  // generic envelope for parameter combinations never locked
    return 1.0;
}

namespace {

// lhs / structural-rhs pairs (no locked constant applied)

std::pair<double, double> deficit_lower_sides(double i_minus1, double i0) {
    return {8.0 * std::numbers::pi * std::numbers::pi * clamp0(i_minus1), i0};
}

std::pair<double, double> deficit_upper_sides(double i_minus1, double i0, double bracket) {
    return {i0, std::sqrt(clamp0(i_minus1) * clamp0(bracket))};
}

std::pair<double, double> interpolation_sides(double i_minus1, double il, double im, int l, int m) {
    const double a = clamp0(i_minus1);
    const double term1 = std::pow(a, 0.5 * (m - l)) * im;
    const double term2 = std::pow(a, static_cast<double>(m - l) / (m + 1)) *
                         std::pow(clamp0(im), static_cast<double>(l + 1) / (m + 1));
    return {il, term1 + term2};
}

std::pair<double, double> gn_i_sides(double il, double i0, double im, int l, int m) {
    const double e = static_cast<double>(l) / m;
    return {il, std::pow(clamp0(im), e) * std::pow(clamp0(i0), 1.0 - e)};
}

double gn_j_theta(int k, int p, int m) {
    return (static_cast<double>(k) - 1.0 / p + 0.5) / m;
}

std::pair<double, double> gn_j_sides(double jkp, double jm2, double j02, int k, int p, int m) {
    const double theta = gn_j_theta(k, p, m);
    return {jkp, std::pow(jm2, theta) * std::pow(j02, 1.0 - theta)};
}

std::pair<double, double> wirtinger_sides(double il, double il1) {
    return {kFourPiSq * il, il1};
}

}  // namespace

std::array<InequalityReport, 2> check_deficit_bounds(const ClosedCurve& curve) {
    const auto inv = invariants_of(curve, 0);
    const double bracket = deficit_bracket(curve);
    const auto [l1, r1] = deficit_lower_sides(inv.i_minus1, inv.i[0]);
    const auto [l2, r2] = deficit_upper_sides(inv.i_minus1, inv.i[0], bracket);
    return {InequalityReport::make("deficit_lower", l1, r1),
            InequalityReport::make("deficit_upper", l2, r2)};
}

InequalityReport check_interpolation(const ClosedCurve& curve, int l, int m) {
    if (l < 0 || l > m) throw std::invalid_argument("check_interpolation: need 0 <= l <= m");
    const auto inv = invariants_of(curve, m);
    const auto [lhs, rhs] = interpolation_sides(inv.i_minus1, inv.i[static_cast<std::size_t>(l)],
                                                inv.i[static_cast<std::size_t>(m)], l, m);
    const std::string name = "interpolation_" + std::to_string(l) + "_" + std::to_string(m);
    return InequalityReport::make(name, lhs, locked_constant(name) * rhs);
}

InequalityReport check_gn_I(const ClosedCurve& curve, int l, int m) {
    if (m < 1 || l < 0 || l > m) throw std::invalid_argument("check_gn_I: need 0 <= l <= m, m >= 1");
    const auto inv = invariants_of(curve, m);
    const auto [lhs, rhs] = gn_i_sides(inv.i[static_cast<std::size_t>(l)], inv.i[0],
                                       inv.i[static_cast<std::size_t>(m)], l, m);
    return InequalityReport::make("gn_i_" + std::to_string(l) + "_" + std::to_string(m), lhs, rhs);
}

InequalityReport check_gn_J(const ClosedCurve& curve, int k, int p, int m) {
    if (k < 0 || k > m || p < 2) throw std::invalid_argument("check_gn_J: need 0 <= k <= m, p >= 2");
    const double theta = gn_j_theta(k, p, m);
    if (theta < 0.0 || theta > 1.0)
        throw std::invalid_argument("check_gn_J: theta = " + std::to_string(theta) +
                                    " outside [0,1] for (k,p,m)");
    const auto inv = invariants_of(curve, m);
    const double jkp = j_norm(curve, k, p);
    const auto [lhs, rhs] = gn_j_sides(jkp, std::sqrt(clamp0(inv.i[static_cast<std::size_t>(m)])),
                                       std::sqrt(clamp0(inv.i[0])), k, p, m);
    const std::string name =
        "gn_j_" + std::to_string(k) + "_" + std::to_string(p) + "_" + std::to_string(m);
    return InequalityReport::make(name, lhs, locked_constant(name) * rhs);
}

InequalityReport check_wirtinger(const ClosedCurve& curve, int l) {
    if (l < 0) throw std::invalid_argument("check_wirtinger: l must be >= 0");
    const auto inv = invariants_of(curve, l + 1);
    const auto [lhs, rhs] = wirtinger_sides(inv.i[static_cast<std::size_t>(l)],
                                            inv.i[static_cast<std::size_t>(l) + 1]);
    return InequalityReport::make("wirtinger_" + std::to_string(l), lhs, rhs);
}

std::string CheckSpec::name() const {
    switch (kind) {
        case Kind::deficit: return "deficit";
        case Kind::interpolation: return "interpolation_" + std::to_string(p1) + "_" + std::to_string(p2);
        case Kind::gn_i: return "gn_i_" + std::to_string(p1) + "_" + std::to_string(p2);
        case Kind::gn_j:
            return "gn_j_" + std::to_string(p1) + "_" + std::to_string(p2) + "_" + std::to_string(p3);
        case Kind::wirtinger: return "wirtinger_" + std::to_string(p1);
    }
    return "unknown";
}

CheckSpec CheckSpec::parse(const std::string& text) {
    CheckSpec spec;
    const auto colon = text.find(':');
    const std::string head = text.substr(0, colon);
    std::vector<int> args;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string cell;
        while (std::getline(ss, cell, ',')) args.push_back(std::stoi(cell));
    }
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw std::invalid_argument("check '" + text + "': expected " + std::to_string(n) +
                                        " parameters");
    };
    if (head == "deficit") {
        need(0);
        spec.kind = Kind::deficit;
    } else if (head == "interpolation") {
        need(2);
        spec = {Kind::interpolation, args[0], args[1], 0};
    } else if (head == "gn_i") {
        need(2);
        spec = {Kind::gn_i, args[0], args[1], 0};
    } else if (head == "gn_j") {
        need(3);
        spec = {Kind::gn_j, args[0], args[1], args[2]};
    } else if (head == "wirtinger") {
        need(1);
        spec = {Kind::wirtinger, args[0], 0, 0};
    } else {
        throw std::invalid_argument("unknown check: '" + text + "'");
    }
    return spec;
}

std::vector<CheckSpec> default_checks() {
    using K = CheckSpec::Kind;
    return {
        {K::deficit, 0, 0, 0},
        {K::interpolation, 0, 1, 0}, {K::interpolation, 0, 2, 0}, {K::interpolation, 1, 2, 0},
        {K::gn_i, 0, 1, 0},          {K::gn_i, 0, 2, 0},          {K::gn_i, 1, 2, 0},
        {K::gn_j, 0, 3, 1},          {K::gn_j, 0, 4, 1},          {K::gn_j, 1, 3, 2},
        {K::wirtinger, 0, 0, 0},     {K::wirtinger, 1, 0, 0},
    };
}

std::pair<ClosedCurve, std::string> random_curve(const std::string& generator, std::size_t samples,
                                                 std::uint64_t seed, std::uint64_t trial,
                                                 int* failures_out) {
    Rng rng = Rng::derive(seed, trial);
    constexpr int kMaxAttempts = 64;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        GeneratorSpec spec;
        spec.samples = samples;
        if (generator == "circle") {
            CircleSpec c;
            c.radius = rng.uniform(0.5, 2.0);
            c.center = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
            spec.shape = c;
        } else if (generator == "fourier") {
            FourierSpec fs;
            fs.modes.push_back({1, cdouble{1.0, 0.0}});
            for (int k = 2; k <= 8; ++k) {
                for (int sign : {1, -1}) {
                    const double amp = rng.uniform(0.0, 0.4 / (k * k));
                    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
                    fs.modes.push_back({sign * k, amp * cdouble{std::cos(phase), std::sin(phase)}});
                }
            }
            spec.shape = fs;
        } else if (generator == "wild") {
            // deliberately hostile amplitudes; most draws fail screening
            FourierSpec fs;
            fs.modes.push_back({1, cdouble{1.0, 0.0}});
            for (int k = 2; k <= 6; ++k) {
                const double amp = rng.uniform(0.4, 1.2 / k);
                const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
                fs.modes.push_back({k, amp * cdouble{std::cos(phase), std::sin(phase)}});
            }
            spec.shape = fs;
        } else {
            throw std::invalid_argument("unknown fuzz generator: '" + generator + "'");
        }
        try {
            ClosedCurve curve = make_curve(spec);
            std::string desc = generator + "(seed=" + std::to_string(seed) +
                               ",trial=" + std::to_string(trial) +
                               ",attempt=" + std::to_string(attempt) + ")";
            return {std::move(curve), std::move(desc)};
        } catch (const CurveError&) {
            if (failures_out) ++(*failures_out);
        }
    }
    throw std::runtime_error("random_curve: generator failed " + std::to_string(kMaxAttempts) +
                             " times in a row (seed " + std::to_string(seed) + ", trial " +
                             std::to_string(trial) + ")");
}

namespace {

struct TrialOutcome {
    // raw_ratio is aligned with the checks list (structural ratio, no locked
    // constant); reports is the flat list used for violation detection (the
    // deficit check contributes two reports).
    std::vector<double> raw_ratio;
    std::vector<InequalityReport> reports;
    std::string descriptor;
    std::optional<ClosedCurve> curve;
};

TrialOutcome evaluate_trial(const FuzzOptions& opt, const std::vector<CheckSpec>& checks,
                            std::uint64_t trial, int* failures) {
    auto [curve, desc] = random_curve(opt.generator, opt.samples, opt.seed, trial, failures);

    int lmax = 0;
    for (const auto& c : checks) {
        switch (c.kind) {
            case CheckSpec::Kind::deficit: break;
            case CheckSpec::Kind::interpolation:
            case CheckSpec::Kind::gn_i: lmax = std::max(lmax, c.p2); break;
            case CheckSpec::Kind::gn_j: lmax = std::max(lmax, c.p3); break;
            case CheckSpec::Kind::wirtinger: lmax = std::max(lmax, c.p1 + 1); break;
        }
    }
    const auto inv = invariants_of(curve, lmax);
    auto I = [&](int l) { return inv.i[static_cast<std::size_t>(l)]; };

    TrialOutcome out;
    out.descriptor = desc;
    for (const auto& c : checks) {
        double lhs = 0.0, rhs = 0.0;
        switch (c.kind) {
            case CheckSpec::Kind::deficit: {
                const double bracket = deficit_bracket(curve);
                auto [l1, r1] = deficit_lower_sides(inv.i_minus1, I(0));
                auto [l2, r2] = deficit_upper_sides(inv.i_minus1, I(0), bracket);
                out.reports.push_back(InequalityReport::make("deficit_lower", l1, r1));
                out.reports.push_back(InequalityReport::make("deficit_upper", l2, r2));
                // the estimate tracks the upper bound's ratio (the binding side)
                lhs = l2;
                rhs = r2;
                break;
            }
            case CheckSpec::Kind::interpolation: {
                std::tie(lhs, rhs) = interpolation_sides(inv.i_minus1, I(c.p1), I(c.p2), c.p1, c.p2);
                out.reports.push_back(
                    InequalityReport::make(c.name(), lhs, locked_constant(c.name()) * rhs));
                break;
            }
            case CheckSpec::Kind::gn_i: {
                std::tie(lhs, rhs) = gn_i_sides(I(c.p1), I(0), I(c.p2), c.p1, c.p2);
                out.reports.push_back(InequalityReport::make(c.name(), lhs, rhs));
                break;
            }
            case CheckSpec::Kind::gn_j: {
                const double jkp = j_norm(curve, c.p1, c.p2);
                std::tie(lhs, rhs) = gn_j_sides(jkp, std::sqrt(clamp0(I(c.p3))),
                                                std::sqrt(clamp0(I(0))), c.p1, c.p2, c.p3);
                out.reports.push_back(
                    InequalityReport::make(c.name(), lhs, locked_constant(c.name()) * rhs));
                break;
            }
            case CheckSpec::Kind::wirtinger: {
                std::tie(lhs, rhs) = wirtinger_sides(I(c.p1), I(c.p1 + 1));
                out.reports.push_back(InequalityReport::make(c.name(), lhs, rhs));
                break;
            }
        }
        double raw;
        if (lhs <= kAbsTol && rhs <= kAbsTol) {
            raw = 0.0;  // trivial case, same convention as the reports
        } else if (rhs == 0.0) {
            raw = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            raw = lhs / rhs;
        }
        out.raw_ratio.push_back(raw);
    }
    out.curve = std::move(curve);
    return out;
}

}  // namespace

std::string FuzzReport::to_json() const {
    nlohmann::ordered_json j;
    j["generator"] = options.generator;
    j["trials"] = options.trials;
    j["seed"] = options.seed;
    j["samples"] = options.samples;
    j["generator_failures"] = generator_failures;
    auto checks = nlohmann::ordered_json::array();
    for (const auto& e : estimates) {
        nlohmann::ordered_json je;
        je["check"] = e.check;
        je["params"] = e.params;
        je["trials"] = e.trials;
        je["nonzero_trials"] = e.nonzero_trials;
        je["sup_ratio"] = e.sup_ratio;
        je["worst_trial"] = e.worst_trial;
        je["worst_descriptor"] = e.worst_descriptor;
        je["worst_curve_file"] = e.worst_curve_file;
        checks.push_back(je);
    }
    j["checks"] = checks;
    auto viols = nlohmann::ordered_json::array();
    for (const auto& v : violations) {
        nlohmann::ordered_json jv;
        jv["trial"] = v.trial;
        jv["check"] = v.check;
        jv["lhs"] = v.report.lhs;
        jv["rhs"] = v.report.rhs;
        viols.push_back(jv);
    }
    j["violations"] = viols;
    return j.dump(2);
}

FuzzReport fuzz_inequalities(const FuzzOptions& options) {
    if (options.trials < 1) throw std::invalid_argument("fuzz_inequalities: trials must be >= 1");
    if (options.workers < 1) throw std::invalid_argument("fuzz_inequalities: workers must be >= 1");
    const auto checks = options.checks.empty() ? default_checks() : options.checks;

    FuzzReport report;
    report.options = options;
    report.options.checks = checks;

    struct Slot {
        double sup = -1.0;
        int trial = -1;
        std::string descriptor;
        std::optional<ClosedCurve> curve;
        int nonzero = 0;
    };
    // deficit contributes two report slots but one estimate (the upper bound
    // carries the structural ratio); estimates are indexed by check.
    std::vector<Slot> slots(checks.size());
    std::vector<FuzzViolation> violations;
    int failures = 0;

    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(options.trials));
    auto work = [&](int begin, int end, int* local_failures) {
        for (int i = begin; i < end; ++i)
            outcomes[static_cast<std::size_t>(i)] =
                evaluate_trial(options, checks, static_cast<std::uint64_t>(i), local_failures);
    };

    if (options.workers == 1 || options.trials < 2 * options.workers) {
        work(0, options.trials, &failures);
    } else {
        std::vector<std::thread> pool;
        std::vector<int> local(static_cast<std::size_t>(options.workers), 0);
        const int chunk = (options.trials + options.workers - 1) / options.workers;
        for (int w = 0; w < options.workers; ++w) {
            const int b = w * chunk, e = std::min(options.trials, (w + 1) * chunk);
            if (b >= e) break;
            pool.emplace_back(work, b, e, &local[static_cast<std::size_t>(w)]);
        }
        for (auto& th : pool) th.join();
        for (int f : local) failures += f;
    }

    const int attempts = options.trials + failures;
    if (attempts >= 20 && failures * 2 > attempts)
        throw std::runtime_error("fuzz_inequalities: generator failure rate " +
                                 std::to_string(failures) + "/" + std::to_string(attempts) +
                                 " exceeds 50%");

    for (int trial = 0; trial < options.trials; ++trial) {
        const auto& out = outcomes[static_cast<std::size_t>(trial)];
        for (std::size_t c = 0; c < checks.size(); ++c) {
            const double raw = out.raw_ratio[c];
            auto& slot = slots[c];
            if (raw > 0.0) ++slot.nonzero;
            if (raw > slot.sup) {
                slot.sup = raw;
                slot.trial = trial;
                slot.descriptor = out.descriptor;
                slot.curve = out.curve;
            }
        }
        for (const auto& rep : out.reports) {
            if (!rep.satisfied || !std::isfinite(rep.lhs) || !std::isfinite(rep.rhs))
                violations.push_back({trial, rep.name, rep});
        }
    }

    namespace fs = std::filesystem;
    if (!options.out_dir.empty()) {
        fs::create_directories(options.out_dir);
        // violation log, kept even when empty so reruns overwrite stale ones
        std::ofstream log(fs::path(options.out_dir) / "violations.csv");
        log << "trial,check,lhs,rhs,margin\n";
        char buf[160];
        for (const auto& v : violations) {
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%.17g\n", v.trial, v.check.c_str(),
                          v.report.lhs, v.report.rhs, v.report.margin);
            log << buf;
        }
    }
    for (std::size_t c = 0; c < checks.size(); ++c) {
        ConstantEstimate e;
        e.check = checks[c].name();
        switch (checks[c].kind) {
            case CheckSpec::Kind::deficit: break;
            case CheckSpec::Kind::interpolation:
            case CheckSpec::Kind::gn_i: e.params = {checks[c].p1, checks[c].p2}; break;
            case CheckSpec::Kind::gn_j: e.params = {checks[c].p1, checks[c].p2, checks[c].p3}; break;
            case CheckSpec::Kind::wirtinger: e.params = {checks[c].p1}; break;
        }
        e.sup_ratio = std::max(slots[c].sup, 0.0);
        e.trials = options.trials;
        e.nonzero_trials = slots[c].nonzero;
        e.worst_trial = slots[c].trial;
        e.worst_descriptor = slots[c].descriptor;
        if (!options.out_dir.empty() && slots[c].curve) {
            const std::string path = (fs::path(options.out_dir) / ("worst_" + e.check + ".csv")).string();
            slots[c].curve->write_csv(path);
            e.worst_curve_file = path;
        }
        report.estimates.push_back(std::move(e));
    }
    report.violations = std::move(violations);
    report.generator_failures = failures;
    return report;
}

}  // namespace curveflow
