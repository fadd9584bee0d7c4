#include "ruled_ricci.h"

#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "ruledricci/errors.hpp"
#include "ruledricci/scene.hpp"

using nlohmann::json;

struct rr_curve {
    rr::SpaceCurve curve;
};

struct rr_patch {
    rr::RuledPatch patch;
};

struct rr_scene {
    rr::Scene scene;
};

namespace {

thread_local std::string g_error_message;
thread_local std::string g_error_detail;

rr_status set_error(const rr::Error& e) {
    g_error_message = e.what();
    g_error_detail = e.detail();
    return static_cast<rr_status>(e.exit_code());
}

rr_status set_error(const std::exception& e) {
    g_error_message = e.what();
    g_error_detail.clear();
    return RR_ERR_NUMERIC;
}

template <typename Fn>
rr_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const rr::Error& e) {
        return set_error(e);
    } catch (const std::exception& e) {
        return set_error(e);
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

std::map<std::string, double> params_from_json(const char* params_json) {
    std::map<std::string, double> out;
    if (!params_json || !*params_json) return out;
    json j;
    try {
        j = json::parse(params_json);
    } catch (const json::exception& e) {
        throw rr::ValidationError(std::string("malformed parameter JSON: ") + e.what());
    }
    if (!j.is_object()) throw rr::ValidationError("parameter JSON must be an object");
    for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) throw rr::ValidationError("parameter '" + k + "' must be a number");
        out[k] = v.get<double>();
    }
    return out;
}

rr_status require(bool ok, const char* message) {
    if (ok) return RR_OK;
    g_error_message = message;
    g_error_detail.clear();
    return RR_ERR_VALIDATION;
}

}  // namespace

extern "C" {

const char* rr_version(void) { return "1.0.0"; }

const char* rr_last_error(void) { return g_error_message.c_str(); }

const char* rr_last_error_detail(void) { return g_error_detail.c_str(); }

void rr_string_free(char* s) { delete[] s; }
void rr_curve_free(rr_curve* c) { delete c; }
void rr_patch_free(rr_patch* p) { delete p; }
void rr_scene_free(rr_scene* s) { delete s; }

rr_status rr_curve_gallery(const char* name, const char* params_json, const char* which,
                           rr_curve** out) {
    if (const rr_status s = require(name && which && out, "null argument")) return s;
    return guarded([&]() {
        const rr::GalleryEntry entry = rr::make_gallery_entry(name, params_from_json(params_json));
        const std::string sel = which;
        if (sel == "alpha") {
            *out = new rr_curve{entry.alpha};
        } else if (sel == "binormal") {
            *out = new rr_curve{entry.binormal};
        } else {
            throw rr::ValidationError("curve selector must be 'alpha' or 'binormal'");
        }
        return RR_OK;
    });
}

rr_status rr_curve_from_exprs(const char* x, const char* y, const char* z,
                              const char* params_json, double t_min, double t_max,
                              rr_curve** out) {
    if (const rr_status s = require(x && y && z && out, "null argument")) return s;
    return guarded([&]() {
        const auto params = params_from_json(params_json);
        if (!(t_max > t_min)) throw rr::ValidationError("curve domain must be non-empty");
        *out = new rr_curve{rr::SpaceCurve::from_expressions(
            rr::Expression::parse(x, params), rr::Expression::parse(y, params),
            rr::Expression::parse(z, params), params, rr::Interval{t_min, t_max})};
        return RR_OK;
    });
}

rr_status rr_curve_from_toml_file(const char* path, rr_curve** out) {
    if (const rr_status s = require(path && out, "null argument")) return s;
    return guarded([&]() {
        *out = new rr_curve{rr::curve_from_toml_file(path)};
        return RR_OK;
    });
}

rr_status rr_curve_domain(const rr_curve* c, double* t_min, double* t_max) {
    if (const rr_status s = require(c && t_min && t_max, "null argument")) return s;
    *t_min = c->curve.domain().lo;
    *t_max = c->curve.domain().hi;
    return RR_OK;
}

rr_status rr_curve_eval(const rr_curve* c, double t, double out_jet[12]) {
    if (const rr_status s = require(c && out_jet, "null argument")) return s;
    return guarded([&]() {
        const rr::CurveJet j = c->curve.jet(t);
        for (int i = 0; i < 3; ++i) {
            out_jet[i] = j.p[i];
            out_jet[3 + i] = j.d1[i];
            out_jet[6 + i] = j.d2[i];
            out_jet[9 + i] = j.d3[i];
        }
        return RR_OK;
    });
}

rr_status rr_curve_speed(const rr_curve* c, double t, double* out) {
    if (const rr_status s = require(c && out, "null argument")) return s;
    return guarded([&]() {
        *out = rr::speed(c->curve, t);
        return RR_OK;
    });
}

rr_status rr_curve_arc_length(const rr_curve* c, double t0, double t1, double* out) {
    if (const rr_status s = require(c && out, "null argument")) return s;
    return guarded([&]() {
        *out = rr::arc_length(c->curve, t0, t1);
        return RR_OK;
    });
}

rr_status rr_curve_reparametrize_arclength(const rr_curve* c, rr_curve** out) {
    if (const rr_status s = require(c && out, "null argument")) return s;
    return guarded([&]() {
        *out = new rr_curve{rr::reparametrize_arclength(c->curve)};
        return RR_OK;
    });
}

rr_status rr_curve_frenet(const rr_curve* c, double t, rr_frenet_data* out) {
    if (const rr_status s = require(c && out, "null argument")) return s;
    return guarded([&]() {
        const rr::FrenetData f = rr::frenet(c->curve, t);
        for (int i = 0; i < 3; ++i) {
            out->tangent[i] = f.tangent[i];
            out->normal[i] = f.normal[i];
            out->binormal[i] = f.binormal[i];
        }
        out->curvature = f.curvature;
        out->torsion = f.torsion;
        out->regular = f.regular ? 1 : 0;
        return RR_OK;
    });
}

rr_status rr_validate_spherical(const rr_curve* b, int grid, rr_spherical_check* out) {
    if (const rr_status s = require(b && out, "null argument")) return s;
    return guarded([&]() {
        const rr::SphericalCurveCheck c = rr::validate_spherical(b->curve, grid);
        out->max_norm_deviation = c.max_norm_deviation;
        out->max_speed_deviation = c.max_speed_deviation;
        out->min_regularity = c.min_regularity;
        out->sign_change = c.sign_change ? 1 : 0;
        out->pass = c.pass() ? 1 : 0;
        return RR_OK;
    });
}

rr_status rr_integrate_alpha(const rr_curve* b, double tau0, double t0, double tol,
                             rr_curve** out) {
    if (const rr_status s = require(b && out, "null argument")) return s;
    return guarded([&]() {
        *out = new rr_curve{rr::integrate_alpha(b->curve, tau0, t0, tol).curve};
        return RR_OK;
    });
}

rr_status rr_verify_binormal(const rr_curve* alpha, const rr_curve* b, int grid, double* out) {
    if (const rr_status s = require(alpha && b && out, "null argument")) return s;
    return guarded([&]() {
        *out = rr::verify_binormal(alpha->curve, b->curve, grid);
        return RR_OK;
    });
}

rr_status rr_patch_new(const rr_curve* alpha, const rr_curve* beta, double u_min, double u_max,
                       rr_patch** out) {
    if (const rr_status s = require(alpha && beta && out, "null argument")) return s;
    return guarded([&]() {
        const rr::Interval t{std::max(alpha->curve.domain().lo, beta->curve.domain().lo),
                             std::min(alpha->curve.domain().hi, beta->curve.domain().hi)};
        if (!(t.hi > t.lo)) throw rr::ValidationError("curve domains do not overlap");
        *out = new rr_patch{rr::make_patch(alpha->curve, beta->curve, t,
                                           rr::Interval{u_min, u_max})};
        return RR_OK;
    });
}

rr_status rr_patch_canonical(const rr_curve* alpha, const rr_curve* b, double tau0,
                             double u_min, double u_max, rr_patch** out) {
    if (const rr_status s = require(alpha && b && out, "null argument")) return s;
    return guarded([&]() {
        const double dev = rr::verify_binormal(alpha->curve, b->curve, 200);
        if (dev > 1e-6) {
            throw rr::ValidationError("binormal deviation " + std::to_string(dev) +
                                      " exceeds 1e-6; not a canonical pair");
        }
        rr::RuledPatch p = rr::make_patch(alpha->curve, b->curve, b->curve.domain(),
                                          rr::Interval{u_min, u_max});
        p.kind = rr::RuledPatch::Kind::canonical;
        p.tau0 = tau0;
        *out = new rr_patch{std::move(p)};
        return RR_OK;
    });
}

rr_status rr_patch_gallery_canonical(const char* name, const char* params_json, double u_min,
                                     double u_max, rr_patch** out) {
    if (const rr_status s = require(name && out, "null argument")) return s;
    return guarded([&]() {
        const rr::GalleryEntry entry = rr::make_gallery_entry(name, params_from_json(params_json));
        *out = new rr_patch{rr::canonical_patch(entry, rr::Interval{u_min, u_max})};
        return RR_OK;
    });
}

rr_status rr_patch_helicoid(double a, double b, double t_min, double t_max, double u_min,
                            double u_max, rr_patch** out) {
    if (const rr_status s = require(out != nullptr, "null argument")) return s;
    return guarded([&]() {
        *out = new rr_patch{
            rr::helicoid(a, b, rr::Interval{t_min, t_max}, rr::Interval{u_min, u_max})};
        return RR_OK;
    });
}

rr_status rr_patch_right_conoid(const char* w_expr, double t_min, double t_max, double u_min,
                                double u_max, rr_patch** out) {
    if (const rr_status s = require(w_expr && out, "null argument")) return s;
    return guarded([&]() {
        *out = new rr_patch{
            rr::right_conoid(w_expr, rr::Interval{t_min, t_max}, rr::Interval{u_min, u_max})};
        return RR_OK;
    });
}

rr_status rr_patch_distribution_parameter(const rr_patch* p, double t, double* out) {
    if (const rr_status s = require(p && out, "null argument")) return s;
    return guarded([&]() {
        *out = rr::distribution_parameter(p->patch, t);
        return RR_OK;
    });
}

rr_status rr_patch_first_fundamental_form(const rr_patch* p, double t, double u,
                                          double out_efg[3]) {
    if (const rr_status s = require(p && out_efg, "null argument")) return s;
    return guarded([&]() {
        const rr::MetricSample m = rr::first_fundamental_form(p->patch, t, u);
        out_efg[0] = m.E;
        out_efg[1] = m.F;
        out_efg[2] = m.G;
        return RR_OK;
    });
}

rr_status rr_patch_gauss_curvature(const rr_patch* p, double t, double u, double* out) {
    if (const rr_status s = require(p && out, "null argument")) return s;
    return guarded([&]() {
        *out = rr::gauss_curvature_closed(p->patch, t, u);
        return RR_OK;
    });
}

rr_status rr_patch_mean_curvature(const rr_patch* p, double t, double u, double* out) {
    if (const rr_status s = require(p && out, "null argument")) return s;
    return guarded([&]() {
        *out = rr::mean_curvature_closed(p->patch, t, u);
        return RR_OK;
    });
}

rr_status rr_patch_shape_sample(const rr_patch* p, double t, double u, rr_shape_sample* out) {
    if (const rr_status s = require(p && out, "null argument")) return s;
    return guarded([&]() {
        const rr::ShapeSample s2 = rr::shape_operator_sample(p->patch, t, u);
        out->L = s2.L;
        out->M = s2.M;
        out->N = s2.Nn;
        out->K = s2.K;
        out->H = s2.H;
        for (int i = 0; i < 3; ++i) out->normal[i] = s2.normal[i];
        return RR_OK;
    });
}

rr_status rr_patch_classify(const rr_patch* p, int probes, char** json_out) {
    if (const rr_status s = require(p && json_out, "null argument")) return s;
    return guarded([&]() {
        const rr::ClassifyResult r = rr::classify(p->patch, probes);
        const json j = {{"class", r.class_name()},
                        {"max_abs_lambda", r.max_abs_lambda},
                        {"lambda0", r.lambda0},
                        {"max_deviation", r.max_deviation},
                        {"probes", r.probes}};
        *json_out = dup_string(j.dump(2));
        return RR_OK;
    });
}

rr_status rr_patch_ricci_check(const rr_patch* p, int n_t, int n_u, double h, int refine,
                               double threshold, char** json_out) {
    if (const rr_status s = require(p && json_out, "null argument")) return s;
    return guarded([&]() {
        const rr::MetricField field = rr::metric_field_from_patch(p->patch);
        const rr::RicciReport report =
            rr::ricci_residual_fd(field, n_t, n_u, h, refine != 0);
        const json j = rr::ricci_report_json(report, threshold);
        *json_out = dup_string(j.dump(2));
        return j["pass"].get<bool>() ? RR_OK : RR_CHECK_FAILED;
    });
}

rr_status rr_scene_new(rr_scene** out) {
    if (const rr_status s = require(out != nullptr, "null argument")) return s;
    *out = new rr_scene{};
    return RR_OK;
}

rr_status rr_scene_load(const char* path, rr_scene** out) {
    if (const rr_status s = require(path && out, "null argument")) return s;
    return guarded([&]() {
        *out = new rr_scene{rr::Scene::load(path)};
        return RR_OK;
    });
}

rr_status rr_scene_set(rr_scene* s, const char* key, const char* value) {
    if (const rr_status st = require(s && key && value, "null argument")) return st;
    return guarded([&]() {
        s->scene.set(key, value);
        return RR_OK;
    });
}

rr_status rr_cmd_construct(const rr_scene* s, char** json_out) {
    if (const rr_status st = require(s && json_out, "null argument")) return st;
    return guarded([&]() {
        *json_out = dup_string(rr::cmd_construct(s->scene).dump(2));
        return RR_OK;
    });
}

rr_status rr_cmd_check(const rr_scene* s, char** json_out) {
    if (const rr_status st = require(s && json_out, "null argument")) return st;
    return guarded([&]() {
        const json j = rr::cmd_check(s->scene);
        *json_out = dup_string(j.dump(2));
        return j["pass"].get<bool>() ? RR_OK : RR_CHECK_FAILED;
    });
}

rr_status rr_cmd_report(const rr_scene* s, char** csv_out) {
    if (const rr_status st = require(s && csv_out, "null argument")) return st;
    return guarded([&]() {
        std::string csv;
        rr::cmd_report(s->scene, &csv);
        *csv_out = dup_string(csv);
        return RR_OK;
    });
}

rr_status rr_cmd_export(const rr_scene* s, char** json_out) {
    if (const rr_status st = require(s && json_out, "null argument")) return st;
    return guarded([&]() {
        *json_out = dup_string(rr::cmd_export(s->scene).dump(2));
        return RR_OK;
    });
}

rr_status rr_gallery_list(char** text_out) {
    if (const rr_status st = require(text_out != nullptr, "null argument")) return st;
    return guarded([&]() {
        *text_out = dup_string(rr::gallery_list_text());
        return RR_OK;
    });
}

rr_status rr_gallery_show(const char* name, const char* params_json, char** json_out) {
    if (const rr_status st = require(name && json_out, "null argument")) return st;
    return guarded([&]() {
        *json_out =
            dup_string(rr::gallery_show_json(name, params_from_json(params_json)).dump(2));
        return RR_OK;
    });
}

rr_status rr_gallery_curve_toml(const char* name, const char* params_json, const char* which,
                                char** toml_out) {
    if (const rr_status st = require(name && which && toml_out, "null argument")) return st;
    return guarded([&]() {
        const rr::GalleryEntry entry = rr::make_gallery_entry(name, params_from_json(params_json));
        *toml_out = dup_string(rr::gallery_curve_toml(entry, which));
        return RR_OK;
    });
}

}  // extern "C"
