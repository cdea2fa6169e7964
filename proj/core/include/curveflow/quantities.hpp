#pragma once

#include <string>
#include <vector>

#include "curveflow/curve.hpp"
#include "curveflow/geometry.hpp"

namespace curveflow {

/// Scale-invariant diagnostics of one curve:
///   i_minus1 = 1 - 4*pi*A/L^2   (isoperimetric deficit)
///   i[l]     = L^(2l+1) * oint (d^l kappa_dev / ds^l)^2 ds
struct InvariantVector {
    double i_minus1 = 0.0;
    std::vector<double> i;  // indices 0..lmax

    /// {"i_minus1": ..., "i": [...]} with 17-significant-digit floats.
    std::string to_json() const;
    static InvariantVector from_json(const std::string& text);
};

InvariantVector invariants_of(const ClosedCurve& curve, int lmax);

/// J_{k,p} = { L^((1+k)p-1) * oint |d^k kappa_dev/ds^k|^p ds }^(1/p), p >= 2.
double j_norm(const ClosedCurve& curve, int k, int p);

/// L^3 * oint ( kappa^3 kappa_dev + (kappa_dev')^2 ) ds
double deficit_bracket(const ClosedCurve& curve);

/// First Fourier data of an arclength-parametrized curve: center estimate c,
/// radius estimate r = |f_hat(1)|/sqrt(L), phase sigma = arg f_hat(1) in
/// [0, 2pi), and the relative energy in modes |k| >= 2 (k = 0 excluded from
/// the total so the residual is translation invariant).
struct FourierFrame {
    Vec2 center{0.0, 0.0};
    double radius = 0.0;
    double sigma = 0.0;
    bool sigma_defined = true;  // false when radius == 0
    double residual = 0.0;
};

FourierFrame fourier_frame(const ClosedCurve& curve);

/// Area barycenter via Green's theorem contour integrals; requires A > 0.
Vec2 barycenter(const ClosedCurve& curve);

struct DiskSpec {
    Vec2 center{0.0, 0.0};
    double radius = 1.0;
};

/// Discrete two-sided Hausdorff distance between the closed region bounded by
/// the curve and the closed disk. Curve samples against the disk, 8N dense
/// disk-boundary samples against the curve polygon. Accuracy O(1/N).
double hausdorff_to_disk(const ClosedCurve& curve, const DiskSpec& disk);

namespace fd {
/// Order-4 finite-difference route for the same invariants. Independent of
/// the spectral differentiation path; kept as the standing oracle for it.
InvariantVector invariants_of(const ClosedCurve& curve, int lmax);
}  // namespace fd

}  // namespace curveflow
