#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "ruledricci/jet.hpp"
#include "ruledricci/surface.hpp"

namespace rr {

using ScalarField = std::function<double(double, double)>;
using ScalarJetFn = std::function<Jet3(double)>;

/// Metric data for the Ricci-condition residual: exact evaluators for the
/// first fundamental form and the Gauss curvature over a rectangle.
struct MetricField {
    ScalarField E, F, G, K;
    Interval t_range{0.0, 1.0};
    Interval u_range{-1.0, 1.0};
    std::string provenance;  // "patch" or "ansatz"
};

/// Field induced by a ruled patch in the paper gauge; K comes from the
/// closed form in lambda (exact), isolating residual error in the
/// finite-difference operators.
MetricField metric_field_from_patch(const RuledPatch& patch);

/// Lemma ansatz g = (f^2 + u^2) dt^2 + 2 sqrt(f^2 - lambda^2) dt du + du^2
/// with K = -lambda^2/(lambda^2 + u^2)^2.
MetricField metric_field_from_ansatz(ScalarJetFn f, ScalarJetFn lambda, Interval t_range,
                                     Interval u_range);

/// g^{ij} dK_i dK_j with 3-point central differences of step h on K and the
/// exact metric inverse at the point. Requires interior margin >= 2h.
double grad_norm_sq(const MetricField& field, double t, double u, double h);

/// (1/sqrt(det g)) d_i(sqrt(det g) g^{ij} d_j K), outer derivatives on a
/// staggered half-step grid, inner K derivatives by 5-point central
/// stencils; second-order accurate overall. Requires margin >= 2.5h.
double laplace_beltrami(const MetricField& field, double t, double u, double h);

struct PointResidual {
    double t = 0.0, u = 0.0;
    double raw = 0.0;         // K lap(K) - |grad K|^2 - 4 K^3, units 1/length^6
    double normalized = 0.0;  // raw / (|K|^3 + eps), dimensionless
};

struct RicciReport {
    int n_t = 0, n_u = 0;
    double h = 0.0;
    double max_normalized = 0.0;
    double mean_normalized = 0.0;
    double rms_normalized = 0.0;
    double max_raw = 0.0;
    /// log2(rms_h / rms_{h/2}) over the same interior point set; ~2 for
    /// Ricci metrics where the residual is pure discretization error.
    std::optional<double> convergence_order;
    std::vector<PointResidual> points;
};

/// Residual over an interior n_t x n_u grid (margins sized to the stencil);
/// refine = true re-evaluates at h/2 on the same points for the order
/// estimate. Throws NumericError on non-finite values or positive K.
RicciReport ricci_residual_fd(const MetricField& field, int n_t, int n_u, double h,
                              bool refine = false);

/// Ricci residual for the delta = 0 family g = (lambda^2+u^2) dt^2 + du^2,
/// assembled from the closed forms for |grad K|^2 and K lap K plus
/// 4 lambda^6/(lambda^2+u^2)^6; zero exactly when lambda' == 0.
double closed_form_residual(const ScalarJetFn& lambda, double t, double u);

/// Coefficient vector of the quartic whose vanishing is the Ricci condition
/// for the delta = 0 family: ((l')^2 - l l'', 5 l^2 (l')^2, -l^4 (2(l')^2 - l l'')).
std::array<double, 3> delta0_polynomial_coefficients(const ScalarJetFn& lambda, double t);

/// Coefficient tables of the Lemma proof at one t (delta != 0 branch);
/// the Ricci condition there is c4 u^4 + ... + c0 = 0.
struct LemmaCoefficients {
    std::array<double, 5> a{};  // a0..a4
    std::array<double, 5> b{};  // b0..b4
    std::array<double, 5> c{};  // c0..c4
    double delta = 0.0;
    double lambda = 0.0;
    double f = 0.0;
};

LemmaCoefficients lemma_coefficients(const ScalarJetFn& f, const ScalarJetFn& lambda, double t);

/// Residual value the c-table encodes: (c4 u^4 + ... + c0) / (delta (lambda^2+u^2)^7).
/// Only meaningful for delta != 0; the delta = 0 family uses
/// closed_form_residual instead.
double lemma_poly_residual(const LemmaCoefficients& lc, double u);

}  // namespace rr
