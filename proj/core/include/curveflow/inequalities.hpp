#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/curve.hpp"

namespace curveflow {

/// satisfied <=> lhs <= rhs*(1 + 1e-8) + 1e-12. ratio is lhs/rhs with the
/// 0/0 case (round circles) reported as 0.
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double ratio = 0.0;
    bool satisfied = false;

    static InequalityReport make(std::string name, double lhs, double rhs);
    std::string to_json() const;
};

/// 8 pi^2 I_{-1} <= I_0 <= sqrt( I_{-1} * L^3 oint (kappa^3 kappa_dev +
/// kappa_dev'^2) ds ). Both inequalities are equalities exactly when
/// kappa_dev vanishes identically.
std::array<InequalityReport, 2> check_deficit_bounds(const ClosedCurve& curve);

/// I_l <= C ( I_{-1}^((m-l)/2) I_m + I_{-1}^((m-l)/(m+1)) I_m^((l+1)/(m+1)) ),
/// 0 <= l <= m. C = C(l,m) is not known in closed form; the report uses the
/// regression-locked empirical envelope and the raw structural ratio is
/// exposed for constant estimation.
InequalityReport check_interpolation(const ClosedCurve& curve, int l, int m);

/// I_l <= I_m^(l/m) I_0^(1-l/m) for 0 <= l <= m, m >= 1 (constant 1 by the
/// Hoelder inequality on the Fourier side).
InequalityReport check_gn_I(const ClosedCurve& curve, int l, int m);

/// J_{k,p} <= C J_{m,2}^theta J_{0,2}^(1-theta) with
/// theta = (k - 1/p + 1/2)/m, which must land in [0,1]. Empirical C.
InequalityReport check_gn_J(const ClosedCurve& curve, int k, int p, int m);

/// 4 pi^2 I_l <= I_{l+1} (mean-zero Wirtinger, scale-invariant form).
InequalityReport check_wirtinger(const ClosedCurve& curve, int l);

/// Locked empirical constants used in the reports for the checks whose C the
/// analysis does not pin down (interpolation, gn_j); 1.0 for the others.
double locked_constant(const std::string& check_name);

struct CheckSpec {
    enum class Kind { deficit, interpolation, gn_i, gn_j, wirtinger };
    Kind kind = Kind::deficit;
    int p1 = 0, p2 = 0, p3 = 0;  // (l,m), (k,p,m) or (l)

    std::string name() const;
    static CheckSpec parse(const std::string& text);
};

/// deficit; interpolation and gn_i at (0,1),(0,2),(1,2); gn_j at
/// (0,3,1),(0,4,1),(1,3,2); wirtinger at l = 0,1.
std::vector<CheckSpec> default_checks();

struct ConstantEstimate {
    std::string check;
    std::vector<int> params;
    double sup_ratio = 0.0;      // raw structural ratio (no locked constant)
    int trials = 0;
    int nonzero_trials = 0;
    int worst_trial = -1;
    std::string worst_descriptor;
    std::string worst_curve_file;  // set when the fuzz run persists curves
};

struct FuzzViolation {
    int trial = -1;
    std::string check;
    InequalityReport report;
};

struct FuzzOptions {
    int trials = 100;
    std::uint64_t seed = 0;
    std::string generator = "fourier";  // or "circle"
    std::size_t samples = 256;
    int workers = 1;
    std::vector<CheckSpec> checks;  // empty -> default_checks()
    std::string out_dir;            // when set, worst curves are written as CSV
};

struct FuzzReport {
    FuzzOptions options;
    std::vector<ConstantEstimate> estimates;
    std::vector<FuzzViolation> violations;
    int generator_failures = 0;
    std::string to_json() const;
};

/// Deterministic for a given seed (independent of worker count): trial i uses
/// the derived stream (seed, i). Aborts when the generator rejection rate
/// exceeds 50%.
FuzzReport fuzz_inequalities(const FuzzOptions& options);

/// Default fuzz curve: f_hat(1) = 1 plus random modes 2 <= |k| <= 8 with
/// magnitude at most 0.4/k^2; rejected draws (winding != 1, self-intersecting)
/// are redrawn. Returns the curve and a short descriptor.
std::pair<ClosedCurve, std::string> random_curve(const std::string& generator, std::size_t samples,
                                                 std::uint64_t seed, std::uint64_t trial,
                                                 int* failures_out = nullptr);

}  // namespace curveflow
