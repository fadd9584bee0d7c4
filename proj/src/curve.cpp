#include "ruledricci/curve.hpp"

#include <cmath>
#include <utility>

#include "ruledricci/errors.hpp"
#include "ruledricci/numfmt.hpp"
#include "ruledricci/quadrature.hpp"

namespace rr {

namespace {

class FunctionCurve final : public SpaceCurve::Impl {
public:
    explicit FunctionCurve(std::function<CurveJet(double)> fn) : fn_(std::move(fn)) {}
    CurveJet jet(double t) const override { return fn_(t); }

private:
    std::function<CurveJet(double)> fn_;
};

class ExpressionCurve final : public SpaceCurve::Impl {
public:
    ExpressionCurve(Expression x, Expression y, Expression z, std::map<std::string, double> bind)
        : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), bindings_(std::move(bind)) {}

    CurveJet jet(double t) const override {
        return curve_jet_from_components(x_.eval_jet(t, bindings_), y_.eval_jet(t, bindings_),
                                         z_.eval_jet(t, bindings_));
    }

private:
    Expression x_, y_, z_;
    std::map<std::string, double> bindings_;
};

void require_finite(const CurveJet& j, double t) {
    if (!j.p.allFinite() || !j.d1.allFinite() || !j.d2.allFinite() || !j.d3.allFinite()) {
        throw NumericError("non-finite curve jet at t = " + format_double(t));
    }
}

}  // namespace

SpaceCurve SpaceCurve::from_function(std::function<CurveJet(double)> fn, Interval domain,
                                     std::string name) {
    return SpaceCurve(std::make_shared<FunctionCurve>(std::move(fn)), domain, std::move(name));
}

SpaceCurve SpaceCurve::from_expressions(Expression x, Expression y, Expression z,
                                        std::map<std::string, double> bindings, Interval domain,
                                        std::string name) {
    auto impl = std::make_shared<ExpressionCurve>(std::move(x), std::move(y), std::move(z),
                                                  std::move(bindings));
    return SpaceCurve(std::move(impl), domain, std::move(name));
}

CurveJet SpaceCurve::jet(double t) const {
    if (!impl_) throw ValidationError("evaluating an empty curve");
    const double slack = 1e-9 * (1.0 + domain_.length());
    if (!domain_.contains(t, slack)) {
        throw NumericError("parameter t = " + format_double(t) + " outside curve domain [" +
                           format_double(domain_.lo) + ", " + format_double(domain_.hi) + "]");
    }
    CurveJet j = impl_->jet(t);
    require_finite(j, t);
    return j;
}

double speed(const SpaceCurve& curve, double t) { return curve.jet(t).d1.norm(); }

double arc_length(const SpaceCurve& curve, double t0, double t1, double abs_tol) {
    return adaptive_simpson([&](double s) { return speed(curve, s); }, t0, t1, abs_tol);
}

FrenetData frenet(const SpaceCurve& curve, double t, double kappa_min) {
    const CurveJet j = curve.jet(t);
    const double v = j.d1.norm();
    if (v <= 0.0) throw NumericError("vanishing speed at t = " + format_double(t));
    FrenetData out;
    out.tangent = j.d1 / v;
    const Vec3 c = j.d1.cross(j.d2);
    const double cn = c.norm();
    out.curvature = cn / (v * v * v);
    if (out.curvature < kappa_min / v) {
        out.regular = false;
        return out;
    }
    out.regular = true;
    out.binormal = c / cn;
    out.normal = out.binormal.cross(out.tangent);
    out.torsion = kTorsionOrientation * c.dot(j.d3) / (cn * cn);
    return out;
}

// ---------------------------------------------------------------------------
// arc-length reparametrization

namespace {
using ArcTable = CumulativeIntegral<1>;
}

ArclengthMap::ArclengthMap(const SpaceCurve& curve) : curve_(curve) {
    const Interval dom = curve.domain();
    auto integrand = [curve](double t) {
        Eigen::Matrix<double, 1, 1> v;
        const double sp = speed(curve, t);
        if (sp <= 0.0) {
            throw NumericError("vanishing speed at t = " + format_double(t) +
                               "; cannot reparametrize by arc length");
        }
        v(0) = sp;
        return v;
    };
    auto table = std::make_shared<ArcTable>(integrand, dom, dom.lo, 1e-12);
    length_ = table->eval(dom.hi)(0);
    table_ = table;
}

double ArclengthMap::s_of_t(double t) const {
    return static_cast<const ArcTable*>(table_.get())->eval(t)(0);
}

double ArclengthMap::t_of_s(double s) const {
    const Interval dom = curve_.domain();
    const double slack = 1e-9 * (1.0 + length_);
    if (s < -slack || s > length_ + slack) {
        throw NumericError("arc length s = " + format_double(s) + " outside [0, " +
                           format_double(length_) + "]");
    }
    s = std::clamp(s, 0.0, length_);
    double lo = dom.lo, hi = dom.hi;
    double t = dom.lo + (s / length_) * dom.length();  // monotone initial guess
    for (int iter = 0; iter < 100; ++iter) {
        const double err = s_of_t(t) - s;
        if (err > 0.0) {
            hi = t;
        } else {
            lo = t;
        }
        if (std::abs(err) <= 1e-13 * (1.0 + length_)) return t;
        const double step = err / speed(curve_, t);
        double next = t - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
        if (std::abs(next - t) <= 1e-12 * (1.0 + std::abs(t))) return next;
        t = next;
    }
    return t;
}

Jet3 ArclengthMap::t_jet_of_s(double s) const {
    const double t = t_of_s(s);
    const CurveJet j = curve_.jet(t);
    const double v = j.d1.norm();
    const double vp = j.d2.dot(j.d1) / v;
    const double vpp = (j.d3.dot(j.d1) + j.d2.squaredNorm() - vp * vp) / v;
    Jet3 m;
    m.d0 = t;
    m.d1 = 1.0 / v;
    m.d2 = -vp / (v * v * v);
    m.d3 = (3.0 * vp * vp - vpp * v) / (v * v * v * v * v);
    return m;
}

namespace {

class ReparametrizedCurve final : public SpaceCurve::Impl {
public:
    ReparametrizedCurve(SpaceCurve base, std::shared_ptr<const ArclengthMap> map)
        : base_(std::move(base)), map_(std::move(map)) {}

    CurveJet jet(double s) const override {
        const Jet3 m = map_->t_jet_of_s(s);
        return compose(base_.jet(m.d0), m);
    }

private:
    SpaceCurve base_;
    std::shared_ptr<const ArclengthMap> map_;
};

}  // namespace

SpaceCurve reparametrize(const SpaceCurve& curve, std::shared_ptr<const ArclengthMap> map) {
    const Interval dom{0.0, map->total_length()};
    auto impl = std::make_shared<ReparametrizedCurve>(curve, std::move(map));
    return SpaceCurve(std::move(impl), dom, curve.name());
}

SpaceCurve reparametrize_arclength(const SpaceCurve& curve) {
    return reparametrize(curve, std::make_shared<ArclengthMap>(curve));
}

}  // namespace rr
