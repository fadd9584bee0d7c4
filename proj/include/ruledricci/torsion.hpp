#pragma once

#include "ruledricci/curve.hpp"

namespace rr {

/// Statistics backing the hypotheses of the constant-torsion construction:
/// B spherical (|B| = 1), B unit speed, and regular in the sense
/// <B x B', B''> != 0 on the probe grid.
struct SphericalCurveCheck {
    int grid = 0;
    double max_norm_deviation = 0.0;   // max | |B| - 1 |
    double max_speed_deviation = 0.0;  // max | |B'| - 1 |
    double min_regularity = 0.0;       // min |<B x B', B''>|
    double max_regularity = 0.0;
    bool sign_change = false;          // <B x B', B''> changes sign on the grid
    bool norm_ok = false;
    bool speed_ok = false;
    bool regularity_ok = false;

    bool pass() const { return norm_ok && speed_ok && regularity_ok && !sign_change; }
};

/// Curve of prescribed constant torsion obtained from a spherical curve:
/// alpha(t) = (1/tau0) * int_{t0}^{t} B' x B. Positions come from the
/// cumulative-integral table; derivative queries use the exact integrand,
/// so Frenet data of the result carries no quadrature error.
struct ConstructedCurve {
    SpaceCurve curve;
    double tau0 = 0.0;
    double base_point = 0.0;
    double tolerance = 0.0;
};

SphericalCurveCheck validate_spherical(const SpaceCurve& B, int grid);

/// Throws ValidationError when tau0 == 0 or validate_spherical fails; the
/// error's detail() carries the check as JSON. A great-circle input (the
/// regularity scalar vanishes identically) gets a dedicated message
/// pointing at the helicoid gallery entry.
ConstructedCurve integrate_alpha(const SpaceCurve& B, double tau0, double t0, double tol = 1e-9);

/// Default base point: the domain midpoint.
ConstructedCurve integrate_alpha(const SpaceCurve& B, double tau0);

/// Max over the grid of min(|B_frenet - B|, |B_frenet + B|); the binormal's
/// sign flips with the normal's orientation choice, so the comparison is
/// sign-insensitive.
double verify_binormal(const SpaceCurve& alpha, const SpaceCurve& B, int grid);

}  // namespace rr
