#include "ruledricci/surface.hpp"

#include <cmath>

#include "ruledricci/errors.hpp"
#include "ruledricci/numfmt.hpp"

namespace rr {

namespace {

void require_gauge(const CurveJet& b, double t, double tol) {
    const double norm_dev = std::abs(b.p.norm() - 1.0);
    const double speed_dev = std::abs(b.d1.norm() - 1.0);
    const double tangency = std::abs(b.p.dot(b.d1));
    if (norm_dev > tol || speed_dev > tol || tangency > tol) {
        throw ValidationError(
            "ruling direction violates the gauge |beta| = |beta'| = 1, <beta, beta'> = 0 at t = " +
            format_double(t) + " (| |beta|-1 | = " + format_double(norm_dev) +
            ", | |beta'|-1 | = " + format_double(speed_dev) +
            ", |<beta, beta'>| = " + format_double(tangency) + ")");
    }
}

}  // namespace

RuledPatch make_patch(SpaceCurve alpha, SpaceCurve beta, Interval t_range, Interval u_range) {
    RuledPatch p;
    p.alpha = std::move(alpha);
    p.beta = std::move(beta);
    p.t_range = t_range;
    p.u_range = u_range;
    return p;
}

std::string ClassifyResult::class_name() const {
    switch (cls) {
        case SurfaceClass::developable: return "developable";
        case SurfaceClass::ricci: return "ricci";
        case SurfaceClass::non_ricci: return "non_ricci";
    }
    return "unknown";
}

double distribution_parameter(const RuledPatch& patch, double t, double gauge_tol) {
    const CurveJet a = patch.alpha.jet(t);
    const CurveJet b = patch.beta.jet(t);
    require_gauge(b, t, gauge_tol);
    const double striction = std::abs(a.d1.dot(b.d1));
    if (striction > gauge_tol * std::max(1.0, a.d1.norm())) {
        throw ValidationError("base curve is not the striction line: |<alpha', beta'>| = " +
                              format_double(striction) + " at t = " + format_double(t));
    }
    const double bp2 = b.d1.squaredNorm();
    if (bp2 <= 0.0) throw NumericError("vanishing |beta'| (cylindrical direction)");
    return a.d1.cross(b.p).dot(b.d1) / bp2;
}

double striction_offset(const SpaceCurve& alpha, const SpaceCurve& beta, double t) {
    const CurveJet a = alpha.jet(t);
    const CurveJet b = beta.jet(t);
    const double bp2 = b.d1.squaredNorm();
    if (bp2 <= 0.0) throw NumericError("vanishing |beta'| (cylindrical direction)");
    return a.d1.dot(b.d1) / bp2;
}

namespace {

class StrictionCurve final : public SpaceCurve::Impl {
public:
    StrictionCurve(SpaceCurve alpha, SpaceCurve beta, double fd_step)
        : alpha_(std::move(alpha)), beta_(std::move(beta)), fd_step_(fd_step) {}

    CurveJet jet(double t) const override {
        const CurveJet a = alpha_.jet(t);
        const CurveJet b = beta_.jet(t);
        const Jet3 h = offset_jet(a, b);
        CurveJet out;
        out.p = a.p - h.d0 * b.p;
        out.d1 = a.d1 - h.d1 * b.p - h.d0 * b.d1;
        out.d2 = a.d2 - h.d2 * b.p - 2.0 * h.d1 * b.d1 - h.d0 * b.d2;
        // h''' requires fourth derivatives of the inputs; extrapolated
        // central difference of the exact d2 stands in.
        const double step = fd_step_;
        const Vec3 d3_h = (second_derivative(t + step) - second_derivative(t - step)) / (2.0 * step);
        const Vec3 d3_h2 =
            (second_derivative(t + 0.5 * step) - second_derivative(t - 0.5 * step)) / step;
        out.d3 = (4.0 * d3_h2 - d3_h) / 3.0;
        return out;
    }

private:
    static Jet3 offset_jet(const CurveJet& a, const CurveJet& b) {
        // h = <alpha', beta'> / |beta'|^2 as an order-2 jet (d3 unused)
        Jet3 num;
        num.d0 = a.d1.dot(b.d1);
        num.d1 = a.d2.dot(b.d1) + a.d1.dot(b.d2);
        num.d2 = a.d3.dot(b.d1) + 2.0 * a.d2.dot(b.d2) + a.d1.dot(b.d3);
        Jet3 den;
        den.d0 = b.d1.squaredNorm();
        den.d1 = 2.0 * b.d1.dot(b.d2);
        den.d2 = 2.0 * (b.d2.squaredNorm() + b.d1.dot(b.d3));
        if (den.d0 <= 0.0) throw NumericError("vanishing |beta'| (cylindrical direction)");
        return num / den;
    }

    Vec3 second_derivative(double t) const {
        const CurveJet a = alpha_.jet(t);
        const CurveJet b = beta_.jet(t);
        const Jet3 h = offset_jet(a, b);
        return a.d2 - h.d2 * b.p - 2.0 * h.d1 * b.d1 - h.d0 * b.d2;
    }

    SpaceCurve alpha_;
    SpaceCurve beta_;
    double fd_step_;
};

}  // namespace

SpaceCurve striction_line(const SpaceCurve& alpha, const SpaceCurve& beta) {
    const Interval dom = alpha.domain();
    const double step = std::min(1e-4 * (1.0 + dom.length()), 0.125 * dom.length());
    auto impl = std::make_shared<StrictionCurve>(alpha, beta, step);
    // keep third-derivative stencils inside the input domain
    Interval inner{dom.lo + step, dom.hi - step};
    return SpaceCurve(std::move(impl), inner, "striction");
}

MetricSample first_fundamental_form(const RuledPatch& patch, double t, double u,
                                    double gauge_tol) {
    const CurveJet a = patch.alpha.jet(t);
    const CurveJet b = patch.beta.jet(t);
    require_gauge(b, t, gauge_tol);
    MetricSample m;
    m.E = a.d1.squaredNorm() + u * u;
    m.F = a.d1.dot(b.p);
    m.G = 1.0;
    m.detg = m.E * m.G - m.F * m.F;
    return m;
}

double gauss_curvature_closed(const RuledPatch& patch, double t, double u) {
    const double lam = distribution_parameter(patch, t);
    const double q = lam * lam + u * u;
    if (q <= 0.0) throw NumericError("degenerate point: lambda = u = 0");
    return -lam * lam / (q * q);
}

ShapeSample shape_operator_sample(const RuledPatch& patch, double t, double u) {
    const CurveJet a = patch.alpha.jet(t);
    const CurveJet b = patch.beta.jet(t);
    const Vec3 x_t = a.d1 + u * b.d1;
    const Vec3 x_u = b.p;
    const Vec3 x_tt = a.d2 + u * b.d2;
    const Vec3 x_tu = b.d1;
    const Vec3 x_uu = Vec3::Zero();  // rulings are straight lines
    const Vec3 nvec = x_t.cross(x_u);
    const double nn = nvec.norm();
    if (nn <= 1e-14 * std::max(1.0, x_t.norm())) {
        throw NumericError("degenerate normal at (t, u) = (" + format_double(t) + ", " +
                           format_double(u) + "): not an immersion point");
    }
    ShapeSample s;
    s.normal = nvec / nn;
    s.L = x_tt.dot(s.normal);
    s.M = x_tu.dot(s.normal);
    s.Nn = x_uu.dot(s.normal);
    const double E = x_t.squaredNorm();
    const double F = x_t.dot(x_u);
    const double G = x_u.squaredNorm();
    const double det = E * G - F * F;
    s.K = (s.L * s.Nn - s.M * s.M) / det;
    s.H = (E * s.Nn - 2.0 * F * s.M + G * s.L) / (2.0 * det);
    return s;
}

double mean_curvature_closed(const RuledPatch& patch, double t, double u) {
    if (patch.kind == RuledPatch::Kind::helicoid) return 0.0;
    if (patch.kind != RuledPatch::Kind::canonical) {
        throw ValidationError(
            "mean_curvature_closed needs a canonical patch (constant-torsion striction line "
            "with its binormal ruling)");
    }
    const FrenetData f = frenet(patch.alpha, t);
    const double kappa = f.curvature;  // defined even at non-regular points
    return -kappa / (2.0 * std::sqrt(1.0 + patch.tau0 * patch.tau0 * u * u));
}

ClassifyResult classify(const RuledPatch& patch, int probes, double tol) {
    if (probes < 2) throw ValidationError("classify needs at least 2 probes");
    ClassifyResult out;
    out.probes = probes;
    double lam_min = std::numeric_limits<double>::infinity();
    double lam_max = -std::numeric_limits<double>::infinity();
    double lam_sum = 0.0;
    double max_mismatch = 0.0;
    double sq_min = std::numeric_limits<double>::infinity();
    double sq_max = 0.0;
    for (int i = 0; i < probes; ++i) {
        const double t = patch.t_range.lo + patch.t_range.length() * i / (probes - 1);
        const double lam = distribution_parameter(patch, t);
        const double speed_sq = patch.alpha.jet(t).d1.squaredNorm();
        out.max_abs_lambda = std::max(out.max_abs_lambda, std::abs(lam));
        lam_min = std::min(lam_min, lam);
        lam_max = std::max(lam_max, lam);
        lam_sum += lam;
        max_mismatch = std::max(max_mismatch, std::abs(lam * lam - speed_sq));
        sq_min = std::min(sq_min, lam * lam);
        sq_max = std::max(sq_max, lam * lam);
    }
    out.lambda0 = lam_sum / probes;
    const double spread = sq_max - sq_min;
    out.max_deviation = std::max(max_mismatch, spread);
    if (out.max_abs_lambda <= 1e-9) {
        out.cls = SurfaceClass::developable;
    } else if (out.max_deviation <= tol * std::max(1.0, sq_max)) {
        out.cls = SurfaceClass::ricci;
    } else {
        out.cls = SurfaceClass::non_ricci;
    }
    return out;
}

}  // namespace rr
