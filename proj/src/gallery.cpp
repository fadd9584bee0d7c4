#include "ruledricci/gallery.hpp"

#include <cmath>

#include "ruledricci/errors.hpp"
#include "ruledricci/numfmt.hpp"

namespace rr {

namespace {

constexpr double kPi = 3.14159265358979323846;

CurveJet circle_ruling_jet(double t) {
    const double s = std::sin(t), c = std::cos(t);
    CurveJet j;
    j.p = Vec3(c, s, 0.0);
    j.d1 = Vec3(-s, c, 0.0);
    j.d2 = Vec3(-c, -s, 0.0);
    j.d3 = Vec3(s, -c, 0.0);
    return j;
}

CurveJet parallel_circles_binormal_jet(double ell, double t) {
    const double w = 1.0 / ell;
    const double c1 = std::sqrt(1.0 - ell * ell);
    const double s = std::sin(t * w), c = std::cos(t * w);
    CurveJet j;
    j.p = Vec3(ell * s, -ell * c, c1);
    j.d1 = Vec3(c, s, 0.0);
    j.d2 = Vec3(-s * w, c * w, 0.0);
    j.d3 = Vec3(-c * w * w, -s * w * w, 0.0);
    return j;
}

CurveJet parallel_circles_alpha_jet(double ell, double t) {
    const double w = 1.0 / ell;
    const double c1 = std::sqrt(1.0 - ell * ell);
    const double s = std::sin(t * w), c = std::cos(t * w);
    CurveJet j;
    j.p = Vec3(-ell * c1 * c, -ell * c1 * s, -ell * t);
    j.d1 = Vec3(c1 * s, -c1 * c, -ell);
    j.d2 = Vec3(c1 * c * w, c1 * s * w, 0.0);
    j.d3 = Vec3(-c1 * s * w * w, c1 * c * w * w, 0.0);
    return j;
}

CurveJet borderline_binormal_jet(double t) {
    const Jet3 x = Jet3::variable(t);
    const Jet3 th = tanh(x);
    return curve_jet_from_components(th * cos(x), th * sin(x), sech(x));
}

CurveJet borderline_alpha_jet(double t) {
    const Jet3 x = Jet3::variable(t);
    const Jet3 sh = sech(x);
    return curve_jet_from_components(-(cos(x) * sh), -(sin(x) * sh), tanh(x) - x);
}

struct AntiSalkowskiParts {
    Jet3 ct, st;     // cos(theta), sin(theta)
    Jet3 root;       // sqrt(1 - ell^2 t^2)
    Jet3 arcsine;    // asin(ell t)
    Jet3 x;          // parameter jet
};

AntiSalkowskiParts anti_salkowski_parts(double ell, double t) {
    AntiSalkowskiParts p;
    p.x = Jet3::variable(t);
    p.arcsine = asin(ell * p.x);
    p.root = sqrt(1.0 - (ell * ell) * (p.x * p.x));
    const double r = std::sqrt(1.0 + ell * ell);
    const Jet3 theta = (r / ell) * p.arcsine;
    p.ct = cos(theta);
    p.st = sin(theta);
    return p;
}

CurveJet anti_salkowski_alpha_jet(double ell, double t) {
    const AntiSalkowskiParts p = anti_salkowski_parts(ell, t);
    const double r = std::sqrt(1.0 + ell * ell);
    const double cconst = ell / (1.0 - 2.0 * ell * ell - 3.0 * std::pow(ell, 4));
    const Jet3 a = (3.0 * ell * ell + 3.0 * std::pow(ell, 4)) * (p.x * p.x) - 2.0;
    const Jet3 b = (r * (1.0 + 3.0 * ell * ell)) * p.x * p.root;
    const Jet3 z = (2.0 * p.arcsine + sin(2.0 * p.arcsine)) / (4.0 * ell * r);
    const Jet3 ca = cconst * a;
    const Jet3 cb = cconst * b;
    return curve_jet_from_components(p.ct * ca - p.st * cb, p.st * ca + p.ct * cb, -z);
}

CurveJet anti_salkowski_binormal_jet(double ell, double t) {
    const AntiSalkowskiParts p = anti_salkowski_parts(ell, t);
    const double r = std::sqrt(1.0 + ell * ell);
    const Jet3 d = (-r) * p.root;
    const Jet3 lt = (ell * ell) * p.x;
    return curve_jet_from_components((p.ct * d - p.st * lt) / r, (p.st * d + p.ct * lt) / r,
                                     (ell / r) * p.x);
}

}  // namespace

GalleryEntry parallel_circles(double ell) {
    if (!(ell > 0.0 && ell < 1.0)) {
        throw ValidationError("parallel_circles requires ell in (0, 1), got ell = " +
                              format_double(ell));
    }
    GalleryEntry e;
    e.name = "parallel_circles";
    e.params = {{"ell", ell}};
    e.domain = Interval{0.0, 2.0 * kPi * ell};
    e.alpha = SpaceCurve::from_function(
        [ell](double t) { return parallel_circles_alpha_jet(ell, t); }, e.domain,
        "parallel_circles alpha");
    e.binormal = SpaceCurve::from_function(
        [ell](double t) { return parallel_circles_binormal_jet(ell, t); }, e.domain,
        "parallel_circles binormal");
    e.tau0 = 1.0;
    e.notes = "circle of radius ell in S^2 and the associated ell-helix; closed B, "
              "helicoid limit as ell -> 1, degenerates to a vertical line as ell -> 0";
    return e;
}

GalleryEntry anti_salkowski(double ell) {
    const double excluded = 1.0 / std::sqrt(3.0);
    if (!(ell > 0.0) || std::abs(ell - excluded) < 1e-9) {
        throw ValidationError(
            "anti_salkowski requires ell > 0 and ell != 1/sqrt(3), got ell = " +
            format_double(ell));
    }
    GalleryEntry e;
    e.name = "anti_salkowski";
    e.params = {{"ell", ell}};
    // stay clear of |t| = 1/ell where the arcsine derivative blows up
    e.domain = Interval{-0.95 / ell, 0.95 / ell};
    // the curvature kappa(t) = tan(asin(ell t)) vanishes at t = 0 and the
    // regularity scalar changes sign there, so constant-torsion
    // construction applies per branch; we expose the positive one
    e.construction_domain = Interval{0.02 / ell, 0.95 / ell};
    e.alpha = SpaceCurve::from_function(
        [ell](double t) { return anti_salkowski_alpha_jet(ell, t); }, e.domain,
        "anti_salkowski alpha");
    e.binormal = SpaceCurve::from_function(
        [ell](double t) { return anti_salkowski_binormal_jet(ell, t); }, e.domain,
        "anti_salkowski binormal");
    e.tau0 = 1.0;
    e.notes = "torsion 1 with non-constant curvature; defined on a bounded interval, "
              "non-complete; converges to the helicoid as ell -> 0";
    return e;
}

GalleryEntry borderline() {
    GalleryEntry e;
    e.name = "borderline";
    e.params = {};
    // kappa(t) = 2 sech(t) decays exponentially; beyond |t| ~ 8 the Frenet
    // frame is too ill-conditioned for the advertised torsion tolerances
    e.domain = Interval{-8.0, 8.0};
    e.alpha = SpaceCurve::from_function([](double t) { return borderline_alpha_jet(t); },
                                        e.domain, "borderline alpha");
    e.binormal = SpaceCurve::from_function([](double t) { return borderline_binormal_jet(t); },
                                           e.domain, "borderline binormal");
    e.tau0 = 1.0;
    e.notes = "spherical curve accumulating at the equator; maximal interval is all of R "
              "(complete surface); [-8, 8] is the default working window";
    return e;
}

std::vector<std::string> gallery_names() {
    return {"parallel_circles", "anti_salkowski", "borderline"};
}

GalleryEntry make_gallery_entry(const std::string& name,
                                const std::map<std::string, double>& params) {
    auto ell_or = [&params](double fallback) {
        const auto it = params.find("ell");
        return it == params.end() ? fallback : it->second;
    };
    if (name == "parallel_circles") return parallel_circles(ell_or(0.5));
    if (name == "anti_salkowski") return anti_salkowski(ell_or(1.0 / 3.0));
    if (name == "borderline") return borderline();
    throw ValidationError("unknown gallery entry '" + name + "'");
}

std::string gallery_param_doc(const std::string& name) {
    if (name == "parallel_circles") return "ell in (0, 1), default 0.5";
    if (name == "anti_salkowski") return "ell > 0, ell != 1/sqrt(3), default 1/3";
    if (name == "borderline") return "(no parameters)";
    throw ValidationError("unknown gallery entry '" + name + "'");
}

CurveExpressions gallery_component_expressions(const GalleryEntry& entry,
                                               const std::string& which) {
    const bool want_alpha = which == "alpha";
    if (!want_alpha && which != "binormal") {
        throw ValidationError("curve selector must be 'alpha' or 'binormal'");
    }
    CurveExpressions out;
    out.parameters = entry.params;
    out.domain = entry.domain;
    if (entry.name == "parallel_circles") {
        if (want_alpha) {
            out.x = "-ell*sqrt(1-ell^2)*cos(t/ell)";
            out.y = "-ell*sqrt(1-ell^2)*sin(t/ell)";
            out.z = "-ell*t";
        } else {
            out.x = "ell*sin(t/ell)";
            out.y = "-ell*cos(t/ell)";
            out.z = "sqrt(1-ell^2)";
        }
        return out;
    }
    if (entry.name == "borderline") {
        if (want_alpha) {
            out.x = "-cos(t)*sech(t)";
            out.y = "-sin(t)*sech(t)";
            out.z = "tanh(t)-t";
        } else {
            out.x = "tanh(t)*cos(t)";
            out.y = "tanh(t)*sin(t)";
            out.z = "sech(t)";
        }
        return out;
    }
    if (entry.name == "anti_salkowski") {
        const std::string theta = "sqrt(1+ell^2)*asin(ell*t)/ell";
        const std::string cc = "(ell/(1-2*ell^2-3*ell^4))";
        const std::string fa = "(3*ell^2*t^2+3*ell^4*t^2-2)";
        const std::string fb = "(sqrt(1+ell^2)*(1+3*ell^2)*t*sqrt(1-ell^2*t^2))";
        const std::string fd = "(-sqrt(1+ell^2)*sqrt(1-ell^2*t^2))";
        if (want_alpha) {
            out.x = "cos(" + theta + ")*" + cc + "*" + fa + "-sin(" + theta + ")*" + cc + "*" + fb;
            out.y = "sin(" + theta + ")*" + cc + "*" + fa + "+cos(" + theta + ")*" + cc + "*" + fb;
            out.z = "-(2*asin(ell*t)+sin(2*asin(ell*t)))/(4*ell*sqrt(1+ell^2))";
        } else {
            out.x = "(cos(" + theta + ")*" + fd + "-sin(" + theta + ")*ell^2*t)/sqrt(1+ell^2)";
            out.y = "(sin(" + theta + ")*" + fd + "+cos(" + theta + ")*ell^2*t)/sqrt(1+ell^2)";
            out.z = "ell*t/sqrt(1+ell^2)";
        }
        return out;
    }
    throw ValidationError("no component expressions for gallery entry '" + entry.name + "'");
}

std::string gallery_curve_toml(const GalleryEntry& entry, const std::string& which) {
    const CurveExpressions ce = gallery_component_expressions(entry, which);
    std::string out;
    out += "# " + entry.name + " " + which + "\n";
    out += "x = \"" + ce.x + "\"\n";
    out += "y = \"" + ce.y + "\"\n";
    out += "z = \"" + ce.z + "\"\n";
    out += "domain = [" + format_double(ce.domain.lo) + ", " + format_double(ce.domain.hi) + "]\n";
    if (!ce.parameters.empty()) {
        out += "\n[parameters]\n";
        for (const auto& [k, v] : ce.parameters) {
            out += k + " = " + format_double(v) + "\n";
        }
    }
    return out;
}

RuledPatch helicoid(double a, double b, Interval t_range, Interval u_range) {
    if (a == 0.0) {
        throw ValidationError("helicoid requires a != 0 (a = 0 degenerates to a plane sweep)");
    }
    SpaceCurve axis = SpaceCurve::from_function(
        [a, b](double t) {
            CurveJet j;
            j.p = Vec3(0.0, 0.0, a * t + b);
            j.d1 = Vec3(0.0, 0.0, a);
            return j;
        },
        t_range, "helicoid axis");
    SpaceCurve ruling =
        SpaceCurve::from_function([](double t) { return circle_ruling_jet(t); }, t_range,
                                  "circle ruling");
    RuledPatch p = make_patch(std::move(axis), std::move(ruling), t_range, u_range);
    p.kind = RuledPatch::Kind::helicoid;
    return p;
}

RuledPatch right_conoid(const Expression& w, Interval t_range, Interval u_range) {
    SpaceCurve axis = SpaceCurve::from_function(
        [w](double t) {
            const Jet3 wz = w.eval_jet(t);
            CurveJet j;
            j.p = Vec3(0.0, 0.0, wz.d0);
            j.d1 = Vec3(0.0, 0.0, wz.d1);
            j.d2 = Vec3(0.0, 0.0, wz.d2);
            j.d3 = Vec3(0.0, 0.0, wz.d3);
            return j;
        },
        t_range, "conoid axis");
    SpaceCurve ruling =
        SpaceCurve::from_function([](double t) { return circle_ruling_jet(t); }, t_range,
                                  "circle ruling");
    return make_patch(std::move(axis), std::move(ruling), t_range, u_range);
}

RuledPatch right_conoid(const std::string& w_source, Interval t_range, Interval u_range) {
    return right_conoid(Expression::parse(w_source), t_range, u_range);
}

RuledPatch tangent_developable_circle(Interval u_range) {
    if (u_range.contains(0.0)) {
        throw ValidationError("tangent developable of the circle needs a u-range excluding 0");
    }
    const Interval t_range{0.0, 2.0 * kPi};
    SpaceCurve base =
        SpaceCurve::from_function([](double t) { return circle_ruling_jet(t); }, t_range,
                                  "unit circle");
    SpaceCurve tangent = SpaceCurve::from_function(
        [](double t) {
            const CurveJet c = circle_ruling_jet(t);
            CurveJet j;
            j.p = c.d1;
            j.d1 = c.d2;
            j.d2 = c.d3;
            j.d3 = c.p;  // fourth derivative of the circle closes the cycle
            return j;
        },
        t_range, "circle tangent");
    return make_patch(std::move(base), std::move(tangent), t_range, u_range);
}

RuledPatch canonical_patch(const GalleryEntry& entry, Interval u_range) {
    // the canonical parametrization lives where B is the oriented Frenet
    // binormal; across a curvature zero the orientation reverses, so the
    // patch is restricted to the entry's canonical branch
    const Interval window = entry.construction_domain.value_or(entry.domain);
    const double dev = verify_binormal(entry.alpha.restricted(window),
                                       entry.binormal.restricted(window), 200);
    if (dev > 1e-6) {
        throw ValidationError("canonical patch rejected: binormal deviation " +
                              format_double(dev) + " exceeds 1e-6");
    }
    RuledPatch p = make_patch(entry.alpha.restricted(window), entry.binormal.restricted(window),
                              window, u_range);
    p.kind = RuledPatch::Kind::canonical;
    p.tau0 = entry.tau0;
    return p;
}

RuledPatch canonical_patch(const ConstructedCurve& constructed, const SpaceCurve& B,
                           Interval u_range) {
    const double dev = verify_binormal(constructed.curve, B, 200);
    if (dev > 1e-6) {
        throw ValidationError("canonical patch rejected: binormal deviation " +
                              format_double(dev) + " exceeds 1e-6");
    }
    RuledPatch p = make_patch(constructed.curve, B, B.domain(), u_range);
    p.kind = RuledPatch::Kind::canonical;
    p.tau0 = constructed.tau0;
    return p;
}

}  // namespace rr
