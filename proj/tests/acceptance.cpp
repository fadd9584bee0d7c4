// Acceptance suite: one pass/fail line per criterion, non-zero exit when
// any fails. Every tolerance is pinned in code next to the check.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ruledricci/gallery.hpp"
#include "ruledricci/ricci.hpp"
#include "ruledricci/scene.hpp"
#include "support/fd.hpp"

using rr::GalleryEntry;
using rr::Interval;
using rr::Jet3;
using rr::RuledPatch;
using rr::SpaceCurve;
using rr::Vec3;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<std::string()>& body) {
    std::string detail;
    bool ok = true;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    if (detail.rfind("FAIL", 0) == 0) ok = false;
    if (!ok) ++g_failures;
    std::printf("[%s] %2d. %-28s %s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::vector<GalleryEntry> canonical_entries() {
    return {rr::parallel_circles(0.25), rr::parallel_circles(0.5),  rr::parallel_circles(0.75),
            rr::anti_salkowski(0.1),    rr::anti_salkowski(1.0 / 3.0), rr::anti_salkowski(0.57),
            rr::borderline()};
}

std::string entry_tag(const GalleryEntry& e) {
    std::string tag = e.name;
    if (const auto it = e.params.find("ell"); it != e.params.end()) {
        tag += "(" + fmt(it->second) + ")";
    }
    return tag;
}

// --- criterion bodies ------------------------------------------------

std::string torsion_reproduction() {
    double worst = 0.0;
    for (const double ell : {0.25, 0.5, 0.75}) {
        const GalleryEntry e = rr::parallel_circles(ell);
        for (int i = 0; i < 50; ++i) {
            const double t = e.domain.lo + e.domain.length() * (i + 0.5) / 50.0;
            worst = std::max(worst, std::abs(rr::frenet(e.alpha, t).torsion - 1.0));
        }
    }
    {
        const GalleryEntry e = rr::borderline();
        for (int i = 0; i < 50; ++i) {
            const double t = e.domain.lo + e.domain.length() * (i + 0.5) / 50.0;
            worst = std::max(worst, std::abs(rr::frenet(e.alpha, t).torsion - 1.0));
        }
    }
    if (worst > 1e-9) return "FAIL max |tau - 1| = " + fmt(worst) + " > 1e-9";
    double worst_as = 0.0;
    for (const double ell : {0.1, 1.0 / 3.0, 0.57}) {
        const GalleryEntry e = rr::anti_salkowski(ell);
        for (int i = 0; i < 50; ++i) {  // even count skips the kappa zero at t = 0
            const double t = e.domain.lo + e.domain.length() * i / 49.0;
            worst_as = std::max(worst_as, std::abs(rr::frenet(e.alpha, t).torsion - 1.0));
        }
    }
    if (worst_as > 1e-7) return "FAIL anti-Salkowski max |tau - 1| = " + fmt(worst_as);
    return "max dev " + fmt(worst) + " (circles/borderline), " + fmt(worst_as) +
           " (anti-Salkowski)";
}

std::string theorem2_invariant() {
    double worst_spread = 0.0, worst_prod = 0.0;
    for (const GalleryEntry& e : canonical_entries()) {
        const RuledPatch p = rr::canonical_patch(e, {-2.0, 2.0});
        double lam_min = 1e300, lam_max = -1e300, lam_sum = 0.0;
        const int probes = 100;
        for (int i = 0; i < probes; ++i) {
            const double t = p.t_range.lo + p.t_range.length() * i / (probes - 1.0);
            const double lam = rr::distribution_parameter(p, t);
            lam_min = std::min(lam_min, lam);
            lam_max = std::max(lam_max, lam);
            lam_sum += lam;
        }
        const double spread = lam_max - lam_min;
        const double mean = lam_sum / probes;
        const double prod = mean * e.tau0;
        worst_spread = std::max(worst_spread, spread);
        worst_prod = std::max(worst_prod, std::abs(prod * prod - 1.0));
        if (spread > 1e-7) {
            return "FAIL " + entry_tag(e) + ": lambda spread " + fmt(spread) + " > 1e-7";
        }
        if (std::abs(prod * prod - 1.0) > 1e-7) {
            return "FAIL " + entry_tag(e) + ": (lambda tau0)^2 - 1 = " +
                   fmt(prod * prod - 1.0);
        }
    }
    return "lambda spread <= " + fmt(worst_spread) + ", |(lambda tau0)^2 - 1| <= " +
           fmt(worst_prod);
}

std::string gauss_tri_oracle() {
    std::vector<std::pair<std::string, RuledPatch>> patches;
    for (const GalleryEntry& e : canonical_entries()) {
        patches.emplace_back(entry_tag(e), rr::canonical_patch(e, {-2.0, 2.0}));
    }
    patches.emplace_back("helicoid", rr::helicoid(1.0, 0.0, {0.0, 2.0 * M_PI}, {-2.0, 2.0}));
    patches.emplace_back("right_conoid(t^2)", rr::right_conoid("t^2", {0.3, 1.8}, {-2.0, 2.0}));
    double worst = 0.0;
    for (const auto& [tag, p] : patches) {
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double t = p.t_range.lo + p.t_range.length() * i / 19.0;
                const double u = p.u_range.lo + p.u_range.length() * j / 19.0;
                const double closed = rr::gauss_curvature_closed(p, t, u);
                const double ext = rr::shape_operator_sample(p, t, u).K;
                const double rel =
                    std::abs(closed - ext) / std::max(std::abs(closed), std::abs(ext));
                worst = std::max(worst, rel);
                if (rel > 1e-7) {
                    return "FAIL " + tag + " at (" + fmt(t) + ", " + fmt(u) +
                           "): rel dev " + fmt(rel);
                }
            }
        }
    }
    return "max relative deviation " + fmt(worst) + " on 20x20 grids";
}

std::string mean_curvature_oracle() {
    double worst = 0.0;
    for (const GalleryEntry& e : canonical_entries()) {
        const RuledPatch p = rr::canonical_patch(e, {-2.0, 2.0});
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double t = p.t_range.lo + p.t_range.length() * i / 19.0;
                const double u = p.u_range.lo + p.u_range.length() * j / 19.0;
                const double closed = rr::mean_curvature_closed(p, t, u);
                const double forms = rr::shape_operator_sample(p, t, u).H;
                const double rel =
                    std::abs(closed - forms) / std::max(std::abs(closed), std::abs(forms));
                worst = std::max(worst, rel);
                if (rel > 1e-7) {
                    return "FAIL " + entry_tag(e) + " at (" + fmt(t) + ", " + fmt(u) +
                           "): rel dev " + fmt(rel);
                }
            }
        }
    }
    const RuledPatch helo = rr::helicoid(1.0, 0.0, {0.0, 2.0 * M_PI}, {-2.0, 2.0});
    double worst_h = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double t = helo.t_range.length() * i / 9.0;
            const double u = helo.u_range.lo + helo.u_range.length() * j / 9.0;
            worst_h = std::max(worst_h, std::abs(rr::shape_operator_sample(helo, t, u).H));
        }
    }
    if (worst_h > 1e-10) return "FAIL helicoid |H| = " + fmt(worst_h) + " > 1e-10";
    return "canonical rel dev <= " + fmt(worst) + ", helicoid |H| <= " + fmt(worst_h);
}

std::string ricci_residual_fd_check() {
    std::vector<std::pair<std::string, RuledPatch>> patches;
    patches.emplace_back("helicoid", rr::helicoid(1.0, 0.0, {0.0, 2.0 * M_PI}, {-2.0, 2.0}));
    for (const GalleryEntry& e : canonical_entries()) {
        patches.emplace_back(entry_tag(e), rr::canonical_patch(e, {-2.0, 2.0}));
    }
    double worst_res = 0.0;
    double order_lo = 1e300, order_hi = -1e300;
    for (const auto& [tag, p] : patches) {
        const rr::MetricField field = rr::metric_field_from_patch(p);
        const rr::RicciReport r = rr::ricci_residual_fd(field, 10, 10, 1e-3, true);
        worst_res = std::max(worst_res, r.max_normalized);
        if (r.max_normalized > 1e-3) {
            return "FAIL " + tag + ": max normalized residual " + fmt(r.max_normalized);
        }
        if (!r.convergence_order) return "FAIL " + tag + ": no convergence order";
        order_lo = std::min(order_lo, *r.convergence_order);
        order_hi = std::max(order_hi, *r.convergence_order);
        if (*r.convergence_order < 1.7 || *r.convergence_order > 2.3) {
            return "FAIL " + tag + ": convergence order " + fmt(*r.convergence_order);
        }
    }
    return "max normalized residual " + fmt(worst_res) + ", orders in [" + fmt(order_lo) +
           ", " + fmt(order_hi) + "]";
}

std::string lemma_classification() {
    // positive: constant lambda is Ricci to rounding
    for (const double c : {0.7, 1.0, 2.3}) {
        auto lam = [c](double) { return Jet3::constant(c); };
        for (const double u : {0.0, 0.5, 1.7}) {
            const double r = rr::closed_form_residual(lam, 0.3, u);
            const double scale = 4.0 * std::pow(c, 6) / std::pow(c * c + u * u, 6);
            if (std::abs(r) > 1e-12 * scale) {
                return "FAIL lambda = " + fmt(c) + ": residual " + fmt(r) +
                       " above 1e-12 scaled";
            }
        }
    }
    // negative, delta = 0 family: lambda = 1 + t^2/10 at (1, 1)
    auto bump = [](double t) {
        const Jet3 x = Jet3::variable(t);
        return 1.0 + (x * x) / 10.0;
    };
    const double r_bump = rr::closed_form_residual(bump, 1.0, 1.0);
    const double lam_val = 1.1;
    const double K = -lam_val * lam_val / std::pow(lam_val * lam_val + 1.0, 2);
    const double normalized = r_bump / std::pow(std::abs(K), 3);
    if (std::abs(normalized) <= 1e-2) {
        return "FAIL bump family: normalized residual " + fmt(normalized);
    }
    // negative, delta != 0: constants f = 2, lambda = 1 via c0 != 0
    auto f2 = [](double) { return Jet3::constant(2.0); };
    auto l1 = [](double) { return Jet3::constant(1.0); };
    const auto lc = rr::lemma_coefficients(f2, l1, 0.0);
    if (std::abs(lc.c[0] + 12.0 * std::sqrt(3.0)) > 1e-12) {
        return "FAIL c0 = " + fmt(lc.c[0]) + ", expected -12 sqrt(3)";
    }
    const double r_c = rr::lemma_poly_residual(lc, 0.0);  // = -12 at u = 0
    const double normalized_c = r_c / 1.0;                // |K(0,0)| = 1
    if (std::abs(normalized_c) <= 1e-2) {
        return "FAIL delta != 0 control: normalized residual " + fmt(normalized_c);
    }
    const rr::MetricField field = rr::metric_field_from_ansatz(
        f2, l1, Interval{-1.0, 1.0}, Interval{-1.0, 1.0});
    const double K0 = field.K(0.0, 0.0);
    const double via_fd = K0 * rr::laplace_beltrami(field, 0.0, 0.0, 1e-3) -
                          rr::grad_norm_sq(field, 0.0, 0.0, 1e-3) - 4.0 * K0 * K0 * K0;
    if (std::abs(via_fd - r_c) > 1e-3) {
        return "FAIL FD cross-check: " + fmt(via_fd) + " vs c-table " + fmt(r_c);
    }
    return "normalized residuals: bump " + fmt(normalized) + ", constants " + fmt(normalized_c);
}

std::string remark_negative_control() {
    const RuledPatch bad = rr::right_conoid("t^2", {0.25, 1.75}, {-1.0, 1.0});
    const auto r_bad = rr::classify(bad, 64);
    if (r_bad.cls != rr::SurfaceClass::non_ricci) {
        return "FAIL w = t^2 classified " + r_bad.class_name();
    }
    const RuledPatch good = rr::right_conoid("3*t+1", {0.0, 2.0}, {-1.0, 1.0});
    const auto r_good = rr::classify(good, 64);
    if (r_good.cls != rr::SurfaceClass::ricci) {
        return "FAIL w = 3t+1 classified " + r_good.class_name();
    }
    return "t^2 -> non_ricci (dev " + fmt(r_bad.max_deviation) + "), 3t+1 -> ricci";
}

std::string construction_round_trip() {
    double worst_pos = 0.0, worst_bin = 0.0;
    for (const GalleryEntry& e : canonical_entries()) {
        const Interval window = e.construction_domain.value_or(e.domain);
        const SpaceCurve b = e.binormal.restricted(window);
        const auto built = rr::integrate_alpha(b, e.tau0);
        const Vec3 offset = e.alpha.position(built.base_point);
        for (int i = 0; i <= 100; ++i) {
            const double t = window.lo + window.length() * i / 100.0;
            const double dev =
                (built.curve.position(t) + offset - e.alpha.position(t)).norm();
            worst_pos = std::max(worst_pos, dev);
            if (dev > 1e-6) {
                return "FAIL " + entry_tag(e) + ": position deviation " + fmt(dev);
            }
        }
        const double bin_dev = rr::verify_binormal(built.curve, b, 100);
        worst_bin = std::max(worst_bin, bin_dev);
        if (bin_dev > 1e-6) {
            return "FAIL " + entry_tag(e) + ": binormal deviation " + fmt(bin_dev);
        }
    }
    return "position dev <= " + fmt(worst_pos) + ", binormal dev <= " + fmt(worst_bin);
}

double frenet_coordinate_offset(const SpaceCurve& alpha_unit, const SpaceCurve& beta_unit,
                                double s) {
    const auto f = rr::frenet(alpha_unit, s);
    auto beta1 = [&](double q) { return beta_unit.position(q).dot(rr::frenet(alpha_unit, q).tangent); };
    const double beta1p = fd::d1(beta1, s, 1e-3);
    const double beta2 = beta_unit.position(s).dot(f.normal);
    return (beta1p - f.curvature * beta2) / beta_unit.jet(s).d1.squaredNorm();
}

std::string striction_equivalence() {
    struct Config {
        std::string tag;
        SpaceCurve alpha, beta;
        std::vector<double> probes;
    };
    std::vector<Config> configs;

    // helicoid base offset by one ruling unit
    const Interval ht{0.0, 2.0 * M_PI};
    configs.push_back(
        {"helicoid+1",
         SpaceCurve::from_function(
             [](double s) {
                 rr::CurveJet j;
                 j.p = Vec3(std::cos(s), std::sin(s), s);
                 j.d1 = Vec3(-std::sin(s), std::cos(s), 1.0);
                 j.d2 = Vec3(-std::cos(s), -std::sin(s), 0.0);
                 j.d3 = Vec3(std::sin(s), -std::cos(s), 0.0);
                 return j;
             },
             ht, "offset helicoid base"),
         SpaceCurve::from_function(
             [](double s) {
                 rr::CurveJet j;
                 j.p = Vec3(std::cos(s), std::sin(s), 0.0);
                 j.d1 = Vec3(-std::sin(s), std::cos(s), 0.0);
                 j.d2 = -j.p;
                 j.d3 = -j.d1;
                 return j;
             },
             ht, "circle"),
         {1.0, 2.5, 4.5}});

    auto offset_entry = [](const GalleryEntry& e, double amount) {
        return SpaceCurve::from_function(
            [e, amount](double t) {
                const rr::CurveJet a = e.alpha.jet(t);
                const rr::CurveJet b = e.binormal.jet(t);
                rr::CurveJet j;
                j.p = a.p + amount * b.p;
                j.d1 = a.d1 + amount * b.d1;
                j.d2 = a.d2 + amount * b.d2;
                j.d3 = a.d3 + amount * b.d3;
                return j;
            },
            e.domain, "offset alpha");
    };
    const GalleryEntry pc = rr::parallel_circles(0.5);
    configs.push_back({"circles+0.3B", offset_entry(pc, 0.3), pc.binormal, {0.5, 1.4, 2.6}});
    const GalleryEntry bl = rr::borderline();
    configs.push_back({"borderline+0.5B", offset_entry(bl, 0.5), bl.binormal, {-2.0, 0.7, 3.0}});

    double worst = 0.0;
    for (const Config& cfg : configs) {
        const auto map = std::make_shared<rr::ArclengthMap>(cfg.alpha);
        const SpaceCurve au = rr::reparametrize(cfg.alpha, map);
        const SpaceCurve bu = rr::reparametrize(cfg.beta, map);
        for (const double t : cfg.probes) {
            const double h_general = rr::striction_offset(cfg.alpha, cfg.beta, t);
            const double h_frenet = frenet_coordinate_offset(au, bu, map->s_of_t(t));
            worst = std::max(worst, std::abs(h_general - h_frenet));
            if (std::abs(h_general - h_frenet) > 1e-8) {
                return "FAIL " + cfg.tag + " at t = " + fmt(t) + ": |dh| = " +
                       fmt(std::abs(h_general - h_frenet));
            }
        }
    }
    // axis recovery for the offset helicoid
    const SpaceCurve axis = rr::striction_line(configs[0].alpha, configs[0].beta);
    for (const double t : {1.0, 3.0, 5.0}) {
        const double dev = (axis.position(t) - Vec3(0.0, 0.0, t)).norm();
        if (dev > 1e-9) return "FAIL axis recovery deviation " + fmt(dev);
    }
    return "max |h_general - h_frenet| = " + fmt(worst) + " over 3 configurations";
}

std::string parser_jet_corpus() {
    struct Item {
        std::string source;
        std::map<std::string, double> params;
        std::vector<double> ts;
    };
    std::vector<Item> corpus;
    const std::vector<double> generic_ts = {-1.2, 0.4, 1.3};
    auto add_entry_components = [&corpus](const GalleryEntry& e,
                                          const std::vector<double>& ts) {
        for (const std::string which : {"alpha", "binormal"}) {
            const rr::CurveExpressions ce = rr::gallery_component_expressions(e, which);
            corpus.push_back({ce.x, ce.parameters, ts});
            corpus.push_back({ce.y, ce.parameters, ts});
            corpus.push_back({ce.z, ce.parameters, ts});
        }
    };
    add_entry_components(rr::parallel_circles(0.5), {0.3, 0.9, 1.4});
    add_entry_components(rr::anti_salkowski(1.0 / 3.0), {-2.0, 0.5, 1.7});
    add_entry_components(rr::borderline(), generic_ts);
    corpus.push_back({"a*t+b", {{"a", 1.5}, {"b", -0.5}}, generic_ts});
    corpus.push_back({"cos(t)", {}, generic_ts});
    corpus.push_back({"sin(t)", {}, generic_ts});
    corpus.push_back({"t^2", {}, generic_ts});
    corpus.push_back({"3*t+1", {}, generic_ts});
    corpus.push_back({"tan(t)", {}, {-0.8, 0.2, 1.1}});
    corpus.push_back({"atan(t)", {}, generic_ts});
    corpus.push_back({"exp(t/2)", {}, generic_ts});
    corpus.push_back({"log(t+3)", {}, generic_ts});
    corpus.push_back({"sqrt(t+2)", {}, {-0.5, 0.4, 1.3}});
    corpus.push_back({"asin(t/4)", {}, generic_ts});
    corpus.push_back({"t^3-2*t+1", {}, generic_ts});
    corpus.push_back({"(1+t^2)^1.5", {}, generic_ts});
    corpus.push_back({"sin(cos(t))", {}, generic_ts});
    corpus.push_back({"exp(-t^2)*sin(3*t)", {}, generic_ts});
    if (corpus.size() < 30) return "FAIL corpus has only " + std::to_string(corpus.size());

    double worst = 0.0;
    for (const Item& item : corpus) {
        const rr::Expression e = rr::Expression::parse(item.source, item.params);
        auto value = [&](double q) { return e.eval(q, item.params); };
        for (const double t : item.ts) {
            const Jet3 j = e.eval_jet(t, item.params);
            const double e1 =
                std::abs(j.d1 - fd::d1(value, t)) / std::max(1.0, std::abs(j.d1));
            const double e2 =
                std::abs(j.d2 - fd::d2(value, t)) / std::max(1.0, std::abs(j.d2));
            const double e3 =
                std::abs(j.d3 - fd::d3(value, t)) / std::max(1.0, std::abs(j.d3));
            worst = std::max({worst, e1, e2, e3});
            if (worst > 1e-6) {
                return "FAIL '" + item.source + "' at t = " + fmt(t) + ": dev " + fmt(worst);
            }
        }
    }
    return std::to_string(corpus.size()) + " expressions, max scaled FD deviation " +
           fmt(worst);
}

}  // namespace

int main() {
    std::printf("acceptance suite: ruled Ricci surfaces from constant-torsion curves\n");
    criterion(1, "torsion reproduction", torsion_reproduction);
    criterion(2, "theorem-2 invariant", theorem2_invariant);
    criterion(3, "gauss tri-oracle", gauss_tri_oracle);
    criterion(4, "mean curvature", mean_curvature_oracle);
    criterion(5, "ricci FD residual", ricci_residual_fd_check);
    criterion(6, "lemma classification", lemma_classification);
    criterion(7, "right-conoid control", remark_negative_control);
    criterion(8, "construction round trip", construction_round_trip);
    criterion(9, "striction equivalence", striction_equivalence);
    criterion(10, "parser/jet corpus", parser_jet_corpus);
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures;
}
