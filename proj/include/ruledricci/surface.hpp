#pragma once

#include <optional>
#include <string>

#include "ruledricci/curve.hpp"

namespace rr {

/// Ruled patch X(t, u) = alpha(t) + u * beta(t) over a parameter rectangle.
/// The closed-form metric and curvature formulas assume the paper gauge
/// |beta| = |beta'| = 1, <beta, beta'> = 0 and alpha the striction line
/// (<alpha', beta'> = 0); operations assert it rather than repairing it.
struct RuledPatch {
    enum class Kind { generic, canonical, helicoid };

    SpaceCurve alpha;
    SpaceCurve beta;
    Interval t_range{0.0, 1.0};
    Interval u_range{-1.0, 1.0};
    Kind kind = Kind::generic;
    double tau0 = 0.0;  // canonical patches only

    Vec3 point(double t, double u) const { return alpha.position(t) + u * beta.position(t); }
};

RuledPatch make_patch(SpaceCurve alpha, SpaceCurve beta, Interval t_range, Interval u_range);

/// First fundamental form in the paper gauge: E = |alpha'|^2 + u^2,
/// F = <alpha', beta>, G = 1.
struct MetricSample {
    double E = 0.0, F = 0.0, G = 0.0;
    double detg = 0.0;
};

/// Second fundamental form and the extrinsic curvature quotients, computed
/// from curve jets (never finite differences).
struct ShapeSample {
    double L = 0.0, M = 0.0, Nn = 0.0;
    double K = 0.0, H = 0.0;
    Vec3 normal = Vec3::Zero();
};

enum class SurfaceClass { developable, ricci, non_ricci };

struct ClassifyResult {
    SurfaceClass cls = SurfaceClass::non_ricci;
    double max_abs_lambda = 0.0;
    double lambda0 = 0.0;          // mean lambda over probes
    double max_deviation = 0.0;    // max |lambda^2 - |alpha'|^2| and spread of lambda^2
    int probes = 0;

    std::string class_name() const;
};

/// lambda(t) = <alpha' x beta, beta'> / |beta'|^2. Preconditions
/// <alpha', beta'> = 0 and <beta, beta'> = 0 within gauge_tol are checked
/// and reported with the offending inner product.
double distribution_parameter(const RuledPatch& patch, double t, double gauge_tol = 1e-8);

/// Striction offset h(t) = <alpha', beta'> / |beta'|^2 (valid for spherical
/// beta) and the line of striction alpha - h * beta. The returned curve's
/// first two derivatives are exact; the third is obtained by a
/// Richardson-extrapolated difference of the exact second derivative
/// (h''' would need fourth-order jets of the inputs).
double striction_offset(const SpaceCurve& alpha, const SpaceCurve& beta, double t);
SpaceCurve striction_line(const SpaceCurve& alpha, const SpaceCurve& beta);

MetricSample first_fundamental_form(const RuledPatch& patch, double t, double u,
                                    double gauge_tol = 1e-8);

/// K = -lambda^2 / (lambda^2 + u^2)^2.
double gauss_curvature_closed(const RuledPatch& patch, double t, double u);

ShapeSample shape_operator_sample(const RuledPatch& patch, double t, double u);

/// H = -kappa(t) / (2 sqrt(1 + tau0^2 u^2)) on canonical patches; zero on
/// the helicoid (kappa == 0 striction line). Errors otherwise.
double mean_curvature_closed(const RuledPatch& patch, double t, double u);

/// developable if max |lambda| <= 1e-9; ricci if lambda^2 and |alpha'|^2
/// are equal and constant within tol across probes; otherwise non_ricci
/// with the maximal deviation as evidence.
ClassifyResult classify(const RuledPatch& patch, int probes, double tol = 1e-7);

}  // namespace rr
