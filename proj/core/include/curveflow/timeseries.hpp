#pragma once

#include <array>
#include <string>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

struct SeriesRecord {
    double t = 0.0;
    double length = 0.0;
    double area = 0.0;
    double i_minus1 = 0.0;
    std::array<double, 5> i{};  // I_0 .. I_4
    double min_kappa = 0.0;
    Vec2 center{0.0, 0.0};   // Fourier-frame c(t)
    double radius = 0.0;     // r(t)
    double sigma = 0.0;      // phase of f_hat(1), [0, 2pi)
    double d_h = 0.0;        // Hausdorff distance to the current fitted disk
    Vec2 barycenter{0.0, 0.0};
    bool simple = true;
};

enum class RunStatus {
    healthy,
    aborted_resolution,    // max|kappa| * h exceeded the trust bound
    aborted_length_drift,  // length-preserving flow drifted > 1%
    aborted_nonfinite,
};

std::string to_string(RunStatus s);

/// Diagnostics recorded along one flow run. Snapshot curves (when kept) are
/// aligned with `records` and feed the limit-circle verification.
struct TimeSeries {
    std::vector<SeriesRecord> records;
    std::vector<ClosedCurve> snapshots;
    RunStatus status = RunStatus::healthy;
    std::string status_detail;
    bool self_intersection_seen = false;

    /// header: t,L,A,i_minus1,i0,...,i4,min_kappa,cx,cy,r,sigma,dH,bx,by
    void write_csv(const std::string& path) const;
    static TimeSeries read_csv(const std::string& path);
};

}  // namespace curveflow
