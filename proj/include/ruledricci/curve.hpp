#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "ruledricci/expr.hpp"
#include "ruledricci/geom.hpp"

namespace rr {

/// Torsion orientation constant. The Frenet convention used throughout is
/// the one with B' = tau N (and N' = -kappa T - tau B), which is the
/// negative of the more common triple-product torsion. Under it the
/// ell-helix associated with a family of parallel circles has torsion +1.
inline constexpr double kTorsionOrientation = -1.0;

/// Immutable parametric curve in R^3 with an order-3 jet evaluator.
/// Copies share the underlying evaluator; all queries are thread-safe.
class SpaceCurve {
public:
    class Impl {
    public:
        virtual ~Impl() = default;
        virtual CurveJet jet(double t) const = 0;
    };

    SpaceCurve() = default;
    SpaceCurve(std::shared_ptr<const Impl> impl, Interval domain, std::string name = "")
        : impl_(std::move(impl)), domain_(domain), name_(std::move(name)) {}

    static SpaceCurve from_function(std::function<CurveJet(double)> fn, Interval domain,
                                    std::string name = "");

    /// Component expressions evaluated through jets; parameter bindings are
    /// fixed at construction.
    static SpaceCurve from_expressions(Expression x, Expression y, Expression z,
                                       std::map<std::string, double> bindings, Interval domain,
                                       std::string name = "");

    /// Order-3 jet at t; throws NumericError outside the domain.
    CurveJet jet(double t) const;
    Vec3 position(double t) const { return jet(t).p; }
    const Interval& domain() const { return domain_; }
    const std::string& name() const { return name_; }
    bool valid() const { return impl_ != nullptr; }

    /// Same evaluator over a different parameter window (the caller is
    /// responsible for the formula being defined there when widening).
    SpaceCurve restricted(Interval window) const { return SpaceCurve(impl_, window, name_); }

private:
    std::shared_ptr<const Impl> impl_;
    Interval domain_{0.0, 1.0};
    std::string name_;
};

/// Frenet apparatus at one parameter value, paper sign convention
/// (B' = tau N). When curvature falls below the regularity threshold the
/// frame is reported non-regular and normal/binormal/torsion are unset.
struct FrenetData {
    Vec3 tangent = Vec3::Zero();
    Vec3 normal = Vec3::Zero();
    Vec3 binormal = Vec3::Zero();
    double curvature = 0.0;
    double torsion = 0.0;
    bool regular = false;
};

double speed(const SpaceCurve& curve, double t);

/// Arc length by adaptive Simpson quadrature (absolute tolerance).
double arc_length(const SpaceCurve& curve, double t0, double t1, double abs_tol = 1e-10);

FrenetData frenet(const SpaceCurve& curve, double t, double kappa_min = 1e-10);

/// Monotone map between a regular curve's parameter t and its arc length s
/// (s = 0 at the domain's left end). Inversion is Newton with a bracket
/// from the cached cumulative table and bisection fallback.
class ArclengthMap {
public:
    explicit ArclengthMap(const SpaceCurve& curve);

    double total_length() const { return length_; }
    double s_of_t(double t) const;
    double t_of_s(double s) const;
    /// Value and first three s-derivatives of t(s).
    Jet3 t_jet_of_s(double s) const;

private:
    SpaceCurve curve_;
    std::shared_ptr<const void> table_;  // CumulativeIntegral<1>
    double length_ = 0.0;
};

/// Unit-speed reparametrization alpha(t(s)) on [0, L]. Throws NumericError
/// if the speed vanishes on the domain.
SpaceCurve reparametrize_arclength(const SpaceCurve& curve);

/// Composition of a curve with a shared arc-length map (used to carry a
/// companion curve, e.g. the ruling direction, through the same s = s(t)).
SpaceCurve reparametrize(const SpaceCurve& curve, std::shared_ptr<const ArclengthMap> map);

}  // namespace rr
