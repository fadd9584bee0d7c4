#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ruledricci/surface.hpp"
#include "ruledricci/torsion.hpp"

namespace rr {

/// Closed-form constant-torsion curve together with its binormal, wired for
/// the construction and verification suites. Curves carry hand-coded
/// analytic jets (not the expression parser), so the two evaluation paths
/// cross-validate each other.
struct GalleryEntry {
    std::string name;
    std::map<std::string, double> params;
    SpaceCurve alpha;
    SpaceCurve binormal;
    Interval domain{0.0, 1.0};
    /// Window on which validate_spherical passes; differs from `domain`
    /// when the regularity scalar <B x B', B''> has a zero (anti-Salkowski
    /// curves lose their Frenet frame at t = 0).
    std::optional<Interval> construction_domain;
    double tau0 = 1.0;
    std::string notes;
};

/// Circles of radius ell in S^2 paired with the ell-helix of torsion 1;
/// domain [0, 2 pi ell].
GalleryEntry parallel_circles(double ell);

/// Anti-Salkowski curve of torsion 1 (non-constant curvature); ell > 0,
/// ell != 1/sqrt(3). Probes stay within |t| <= 0.95/ell.
GalleryEntry anti_salkowski(double ell);

/// Spherical curve accumulating at the equator; complete, torsion 1.
GalleryEntry borderline();

std::vector<std::string> gallery_names();
GalleryEntry make_gallery_entry(const std::string& name,
                                const std::map<std::string, double>& params);

/// One-line parameter documentation for `gallery list`.
std::string gallery_param_doc(const std::string& name);

/// Component expression strings of a gallery curve ("alpha" or "binormal"),
/// the parser-facing twins of the hand-coded jets.
struct CurveExpressions {
    std::string x, y, z;
    std::map<std::string, double> parameters;
    Interval domain;
};
CurveExpressions gallery_component_expressions(const GalleryEntry& entry,
                                               const std::string& which);

/// Curve-definition TOML for a gallery curve ("alpha" or "binormal").
std::string gallery_curve_toml(const GalleryEntry& entry, const std::string& which);

/// X(t,u) = (0,0,at+b) + u (cos t, sin t, 0); classifies ricci, lambda = a.
RuledPatch helicoid(double a, double b, Interval t_range, Interval u_range);

/// X_w(t,u) = (0,0,w(t)) + u (cos t, sin t, 0); ricci iff w is affine.
RuledPatch right_conoid(const Expression& w, Interval t_range, Interval u_range);
RuledPatch right_conoid(const std::string& w_source, Interval t_range, Interval u_range);

/// Tangent surface of the unit circle: developable control patch in the
/// paper gauge (|T'| = kappa = 1). The u-range must exclude 0, where the
/// parametrization fails to be an immersion.
RuledPatch tangent_developable_circle(Interval u_range);

/// Patch (alpha, B) over the entry domain; verifies the binormal
/// correspondence (deviation <= 1e-6) before returning.
RuledPatch canonical_patch(const GalleryEntry& entry, Interval u_range);

/// Canonical patch from a constructed curve and its generating B.
RuledPatch canonical_patch(const ConstructedCurve& constructed, const SpaceCurve& B,
                           Interval u_range);

}  // namespace rr
