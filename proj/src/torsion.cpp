#include "ruledricci/torsion.hpp"

#include <cmath>
#include <memory>

#include <nlohmann/json.hpp>

#include "ruledricci/errors.hpp"
#include "ruledricci/quadrature.hpp"

namespace rr {

namespace {

constexpr double kDeviationTol = 1e-8;
constexpr double kRegularityMin = 1e-8;

nlohmann::json check_to_json(const SphericalCurveCheck& c) {
    return {{"grid", c.grid},
            {"max_norm_deviation", c.max_norm_deviation},
            {"max_speed_deviation", c.max_speed_deviation},
            {"min_regularity", c.min_regularity},
            {"max_regularity", c.max_regularity},
            {"sign_change", c.sign_change},
            {"norm_ok", c.norm_ok},
            {"speed_ok", c.speed_ok},
            {"regularity_ok", c.regularity_ok},
            {"pass", c.pass()}};
}

}  // namespace

SphericalCurveCheck validate_spherical(const SpaceCurve& B, int grid) {
    if (grid < 2) throw ValidationError("spherical check needs a grid of at least 2 probes");
    SphericalCurveCheck out;
    out.grid = grid;
    const Interval dom = B.domain();
    double min_reg = std::numeric_limits<double>::infinity();
    double max_reg = 0.0;
    bool seen_pos = false, seen_neg = false;
    for (int i = 0; i < grid; ++i) {
        const double t = dom.lo + dom.length() * i / (grid - 1);
        const CurveJet j = B.jet(t);
        out.max_norm_deviation = std::max(out.max_norm_deviation, std::abs(j.p.norm() - 1.0));
        out.max_speed_deviation = std::max(out.max_speed_deviation, std::abs(j.d1.norm() - 1.0));
        const double reg = j.p.cross(j.d1).dot(j.d2);
        min_reg = std::min(min_reg, std::abs(reg));
        max_reg = std::max(max_reg, std::abs(reg));
        if (reg > 0.0) seen_pos = true;
        if (reg < 0.0) seen_neg = true;
    }
    out.min_regularity = min_reg;
    out.max_regularity = max_reg;
    out.sign_change = seen_pos && seen_neg;
    out.norm_ok = out.max_norm_deviation <= kDeviationTol;
    out.speed_ok = out.max_speed_deviation <= kDeviationTol;
    out.regularity_ok = out.min_regularity >= kRegularityMin;
    return out;
}

namespace {

/// alpha' = (1/tau0) B' x B with exact second and third derivatives from
/// B's jets; position from the cumulative table.
class ConstructedCurveImpl final : public SpaceCurve::Impl {
public:
    ConstructedCurveImpl(SpaceCurve B, double tau0, std::shared_ptr<CumulativeIntegral<3>> table)
        : B_(std::move(B)), inv_tau_(1.0 / tau0), table_(std::move(table)) {}

    CurveJet jet(double t) const override {
        const CurveJet b = B_.jet(t);
        CurveJet out;
        out.p = table_->eval(t);
        out.d1 = inv_tau_ * b.d1.cross(b.p);
        // d/dt (B' x B) = B'' x B  (the B' x B' term vanishes)
        out.d2 = inv_tau_ * b.d2.cross(b.p);
        out.d3 = inv_tau_ * (b.d3.cross(b.p) + b.d2.cross(b.d1));
        return out;
    }

private:
    SpaceCurve B_;
    double inv_tau_;
    std::shared_ptr<CumulativeIntegral<3>> table_;
};

}  // namespace

ConstructedCurve integrate_alpha(const SpaceCurve& B, double tau0, double t0, double tol) {
    if (tau0 == 0.0) throw ValidationError("constant torsion tau0 must be non-zero");
    const SphericalCurveCheck check = validate_spherical(B, 256);
    if (!check.pass()) {
        std::string msg = "spherical curve validation failed";
        if (check.norm_ok && check.speed_ok && check.max_regularity < kRegularityMin) {
            msg = "spherical curve is a great circle (<B x B', B''> vanishes identically); "
                  "its constant-torsion surface is the helicoid -- use the helicoid gallery "
                  "entry instead";
        } else if (check.sign_change) {
            msg = "<B x B', B''> changes sign on the domain; restrict to a sub-interval on "
                  "which it keeps one sign";
        }
        ValidationError err(msg);
        err.set_detail(check_to_json(check).dump());
        throw err;
    }
    auto integrand = [B, tau0](double s) -> Vec3 {
        const CurveJet b = B.jet(s);
        return (1.0 / tau0) * b.d1.cross(b.p);
    };
    auto table = std::make_shared<CumulativeIntegral<3>>(integrand, B.domain(), t0, tol);
    ConstructedCurve out;
    out.curve = SpaceCurve(std::make_shared<ConstructedCurveImpl>(B, tau0, std::move(table)),
                           B.domain(), "constructed");
    out.tau0 = tau0;
    out.base_point = t0;
    out.tolerance = tol;
    return out;
}

ConstructedCurve integrate_alpha(const SpaceCurve& B, double tau0) {
    return integrate_alpha(B, tau0, B.domain().midpoint());
}

double verify_binormal(const SpaceCurve& alpha, const SpaceCurve& B, int grid) {
    if (grid < 2) throw ValidationError("verify_binormal needs at least 2 probes");
    const Interval dom = B.domain();
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = dom.lo + dom.length() * i / (grid - 1);
        const FrenetData f = frenet(alpha, t);
        if (!f.regular) {
            throw NumericError("non-regular point at t = " + std::to_string(t) +
                               " while verifying the binormal");
        }
        const Vec3 b = B.position(t);
        const double dev = std::min((f.binormal - b).norm(), (f.binormal + b).norm());
        worst = std::max(worst, dev);
    }
    return worst;
}

}  // namespace rr
