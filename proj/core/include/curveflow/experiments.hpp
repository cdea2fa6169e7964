#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curveflow/timeseries.hpp"

namespace curveflow {

struct DecayFit {
    std::string quantity;
    double t_begin = 0.0;
    double t_end = 0.0;
    double amplitude = 0.0;  // C in C*exp(-lambda t)
    double rate = 0.0;       // lambda
    double r_squared = 0.0;
    int samples_used = 0;
    bool ok = false;
    std::string note;
};

struct FitWindow {
    double t_begin = 0.0;
    double t_end = 0.0;
};

/// Default asymptotic window: from the time I_{-1} first drops below half its
/// initial value to the time it last sits above 1e-10 (clear of both the
/// transient and the floating-point floor).
FitWindow default_fit_window(const TimeSeries& series);

/// Column accessor. Names: t, L, A, i_minus1, i0..i4, min_kappa, cx, cy, r,
/// sigma, dH, bx, by.
std::vector<double> series_column(const TimeSeries& series, const std::string& name);

/// Least-squares line on (t, log q) over the window; only samples with
/// q > 1e-14 participate and at least 10 of them are required.
DecayFit fit_exponential(const TimeSeries& series, const std::string& quantity, FitWindow window);
DecayFit fit_exponential_samples(const std::vector<double>& t, const std::vector<double>& q,
                                 const std::string& name, FitWindow window);

struct ConvexityDetection {
    std::optional<double> t_star;  // earliest recorded time after which min kappa stays positive
    bool lost_after_gain = false;
    std::string note;
};

ConvexityDetection detect_convexity_time(const TimeSeries& series);

struct LimitCircle {
    Vec2 center{0.0, 0.0};
    double radius = 0.0;   // L_inf / (2 pi)
    double sigma = 0.0;    // unwrapped tail phase
    double length = 0.0;
    double area = 0.0;
};

/// Tail-average limit extraction; refuses (throws std::runtime_error) unless
/// the recorded I_{-1} has decayed below 1e-6.
LimitCircle limit_circle(const TimeSeries& series);

struct ChecklistItem {
    int id = 0;             // checklist item number (1..7)
    std::string name;
    std::string status;     // "fit" | "floor" | "unverifiable" | "failed"
    bool pass = false;
    DecayFit fit;           // meaningful when status == "fit"
    double final_value = 0.0;
};

struct ChecklistReport {
    std::vector<ChecklistItem> items;
    bool all_pass = false;
};

/// Item-by-item verification of the limit-circle picture: (1) center decay,
/// (2) radius decay, (3) phase decay, (4) C0/C1/C2 distance of the normalized
/// curve to the limit parametrization (snapshot-based, orders k <= 2),
/// (5) finite convexification time, (6) Hausdorff decay to the limit disk,
/// (7) scaled barycenter-center decay. Quantities already at the numerical
/// floor pass as "floor".
ChecklistReport verify_limit_circle(const TimeSeries& series, const LimitCircle& limit);

struct ExperimentSummary {
    std::vector<DecayFit> fits;        // i_minus1, i0..i4 on the default window
    ConvexityDetection convexity;
    std::optional<LimitCircle> limit;
    std::optional<ChecklistReport> limit_circle_checklist;
    std::string status;
};

ExperimentSummary analyze(const TimeSeries& series);

/// Writes series.csv, summary.json and (for non-empty series) SVG plots into
/// `out_dir`. `config_echo` is embedded verbatim as the run_config field.
/// Returns the paths written. Deterministic byte content for fixed inputs.
std::vector<std::string> emit_report(const TimeSeries& series, const ExperimentSummary& summary,
                                     const std::string& out_dir, const std::string& config_echo);

/// Continuous lift of a sequence of angles (jumps folded to within pi).
std::vector<double> unwrap_angles(const std::vector<double>& wrapped);

}  // namespace curveflow
