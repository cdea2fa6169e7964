#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "curveflow/curve.hpp"
#include "curveflow/timeseries.hpp"

namespace curveflow {

enum class FlowKind {
    area_preserving,    // speed kappa - (1/L) oint kappa ds
    jiang_pan,          // speed kappa - L/(2A)
    length_preserving,  // speed kappa - (1/2pi) oint kappa^2 ds
};

std::string to_string(FlowKind kind);
FlowKind flow_kind_from_string(const std::string& name);

struct FlowError : std::runtime_error {
    explicit FlowError(const std::string& what) : std::runtime_error(what) {}
};

/// One snapshot of an evolving curve. The curve is kept uniform-arclength
/// sampled between steps; `lambda` is the non-local coefficient used for the
/// most recent step (units 1/length).
struct FlowState {
    ClosedCurve curve;
    double time = 0.0;
    FlowKind kind = FlowKind::length_preserving;
    double lambda = 0.0;
};

struct StepStats {
    double dt = 0.0;
    double d_length = 0.0;
    double d_area = 0.0;
    int taylor_order = 0;        // reprojection Taylor order actually used
    bool fallback_resample = false;
    double max_shift = 0.0;      // largest |delta theta| during reprojection
};

struct StepOptions {
    bool renormalize = false;   // rescale each step to pin L (or A) exactly
    double renorm_target = 0.0; // target length / area; <= 0 means "per kind, from current"
    double resolution_bound = 0.5;  // abort when max|kappa| * h exceeds this
};

/// Non-local coefficient of the flow on this curve: 2pi/L-equivalent integral
/// for the area-preserving flow, L/(2A) for Jiang-Pan (A must be positive),
/// (1/2pi) oint kappa^2 ds for the length-preserving flow.
double nonlocal_coefficient(FlowKind kind, const ClosedCurve& curve);

/// Validates initial data (rotation number 1, positive area), resamples to
/// uniform arclength and wraps it into a state at time 0.
FlowState make_state(const ClosedCurve& initial, FlowKind kind);

/// One IMEX step: implicit uniform-parameter Laplacian with the metric frozen
/// at step start, explicit non-local transport, then uniform-arclength
/// reprojection (tangential; the image curve moves only by scheme error).
std::pair<FlowState, StepStats> step(const FlowState& state, double dt,
                                     const StepOptions& options = {});

struct RunOptions {
    FlowKind kind = FlowKind::length_preserving;
    double dt = 1e-4;
    double t_end = 1.0;
    int record_every = 10;  // steps between records
    bool renormalize = false;
    bool keep_snapshots = true;
    bool check_simplicity = true;  // per record; warn-and-continue
};

TimeSeries run(const ClosedCurve& initial, const RunOptions& options);

/// Central-difference dA/dt against I_0/(2pi) at the probe midpoint, for the
/// length-preserving flow. The probe steps are integrated with 16 substeps so
/// that the O(dt_probe^2) differencing error dominates the scheme error.
double dAdt_residual(const FlowState& state, double dt_probe);

}  // namespace curveflow
