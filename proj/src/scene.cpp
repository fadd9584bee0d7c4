#include "ruledricci/scene.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "ruledricci/errors.hpp"
#include "ruledricci/mesh.hpp"
#include "ruledricci/numfmt.hpp"
#include "ruledricci/parallel.hpp"

namespace rr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double to_number(const std::string& value, const std::string& key) {
    double v = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw ValidationError("value '" + value + "' for " + key + " is not a number");
    }
    return v;
}

std::map<std::string, double> number_table(const toml::Table& root, const std::string& key) {
    std::map<std::string, double> out;
    if (const toml::Value* v = toml::find(root, key)) {
        for (const auto& [k, item] : v->as_table()) out[k] = item.as_number();
    }
    return out;
}

std::optional<Interval> interval_from(const toml::Table& root, const std::string& key) {
    if (const toml::Value* v = toml::find(root, key)) {
        const auto& arr = v->as_array();
        if (arr.size() != 2) throw ValidationError(key + " must be a [lo, hi] pair");
        return Interval{arr[0], arr[1]};
    }
    return std::nullopt;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string ensure_out_dir(const Scene& scene) {
    if (scene.out_dir.empty()) return {};
    std::error_code ec;
    fs::create_directories(scene.out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + scene.out_dir + "'");
    return scene.out_dir;
}

std::string scene_stem(const Scene& scene) {
    if (scene.patch_kind == "canonical") {
        if (scene.source == "gallery") return scene.gallery;
        return "constructed";
    }
    return scene.patch_kind;
}

}  // namespace

Scene Scene::from_toml(const toml::Table& t) {
    Scene s;
    s.source = toml::string_or(t, "curve.source", s.source);
    s.gallery = toml::string_or(t, "curve.name", s.gallery);
    s.gallery_params = number_table(t, "curve.params");
    s.curve_file = toml::string_or(t, "curve.file", s.curve_file);
    s.inline_x = toml::string_or(t, "curve.inline.x", s.inline_x);
    s.inline_y = toml::string_or(t, "curve.inline.y", s.inline_y);
    s.inline_z = toml::string_or(t, "curve.inline.z", s.inline_z);
    s.inline_params = number_table(t, "curve.inline.parameters");
    s.inline_domain = interval_from(t, "curve.inline.domain");

    s.patch_kind = toml::string_or(t, "patch.kind", s.patch_kind);
    s.helicoid_a = toml::number_or(t, "patch.a", s.helicoid_a);
    s.helicoid_b = toml::number_or(t, "patch.b", s.helicoid_b);
    s.conoid_w = toml::string_or(t, "patch.w", s.conoid_w);
    s.t_range = interval_from(t, "patch.t_range");
    if (const auto u = interval_from(t, "patch.u_range")) s.u_range = *u;

    s.n_t = static_cast<int>(toml::number_or(t, "grid.n_t", s.n_t));
    s.n_u = static_cast<int>(toml::number_or(t, "grid.n_u", s.n_u));

    s.check_n_t = static_cast<int>(toml::number_or(t, "check.n_t", s.check_n_t));
    s.check_n_u = static_cast<int>(toml::number_or(t, "check.n_u", s.check_n_u));
    s.h = toml::number_or(t, "check.h", s.h);
    s.tol = toml::number_or(t, "check.tol", s.tol);
    s.refine = toml::bool_or(t, "check.refine", s.refine);

    s.tau0 = toml::number_or(t, "construct.tau0", s.tau0);
    s.quad_tol = toml::number_or(t, "construct.quad_tol", s.quad_tol);
    if (const toml::Value* v = toml::find(t, "construct.t0")) s.base_point = v->as_number();

    s.out_dir = toml::string_or(t, "output.dir", s.out_dir);
    return s;
}

Scene Scene::load(const std::string& path) { return from_toml(toml::parse_file(path)); }

void Scene::set(const std::string& key, const std::string& value) {
    auto starts = [&key](const char* prefix) {
        return key.rfind(prefix, 0) == 0;
    };
    if (key == "curve.source") { source = value; return; }
    if (key == "curve.name") { gallery = value; return; }
    if (key == "curve.file") { curve_file = value; return; }
    if (starts("curve.params.")) {
        gallery_params[key.substr(13)] = to_number(value, key);
        return;
    }
    if (key == "curve.inline.x") { inline_x = value; return; }
    if (key == "curve.inline.y") { inline_y = value; return; }
    if (key == "curve.inline.z") { inline_z = value; return; }
    if (starts("curve.inline.parameters.")) {
        inline_params[key.substr(24)] = to_number(value, key);
        return;
    }
    if (key == "patch.kind") { patch_kind = value; return; }
    if (key == "patch.a") { helicoid_a = to_number(value, key); return; }
    if (key == "patch.b") { helicoid_b = to_number(value, key); return; }
    if (key == "patch.w") { conoid_w = value; return; }
    if (key == "patch.t_min") { t_range = Interval{to_number(value, key), t_range ? t_range->hi : 0.0}; return; }
    if (key == "patch.t_max") { t_range = Interval{t_range ? t_range->lo : 0.0, to_number(value, key)}; return; }
    if (key == "patch.u_min") { u_range.lo = to_number(value, key); return; }
    if (key == "patch.u_max") { u_range.hi = to_number(value, key); return; }
    if (key == "grid.n_t") { n_t = static_cast<int>(to_number(value, key)); return; }
    if (key == "grid.n_u") { n_u = static_cast<int>(to_number(value, key)); return; }
    if (key == "check.n_t") { check_n_t = static_cast<int>(to_number(value, key)); return; }
    if (key == "check.n_u") { check_n_u = static_cast<int>(to_number(value, key)); return; }
    if (key == "check.h") { h = to_number(value, key); return; }
    if (key == "check.tol") { tol = to_number(value, key); return; }
    if (key == "check.refine") { refine = value == "true" || value == "1"; return; }
    if (key == "construct.tau0") { tau0 = to_number(value, key); return; }
    if (key == "construct.quad_tol") { quad_tol = to_number(value, key); return; }
    if (key == "construct.t0") { base_point = to_number(value, key); return; }
    if (key == "output.dir") { out_dir = value; return; }
    throw ValidationError("unknown scene key '" + key + "'");
}

void Scene::validate() const {
    if (n_t < 4 || n_u < 4) throw ValidationError("grid resolution must be at least 4x4");
    if (check_n_t < 2 || check_n_u < 2) {
        throw ValidationError("check grid resolution must be at least 2x2");
    }
    if (!(u_range.hi > u_range.lo) || !std::isfinite(u_range.lo) || !std::isfinite(u_range.hi)) {
        throw ValidationError("u-range must be a finite non-empty interval");
    }
    if (!(h > 0.0)) throw ValidationError("FD step h must be positive");
    if (!(tol > 0.0)) throw ValidationError("tolerance must be positive");
    if (source != "gallery" && source != "file" && source != "inline") {
        throw ValidationError("curve source must be gallery, file, or inline");
    }
}

SpaceCurve curve_from_toml(const toml::Table& t, const std::string& name) {
    const toml::Value* x = toml::find(t, "x");
    const toml::Value* y = toml::find(t, "y");
    const toml::Value* z = toml::find(t, "z");
    if (!x || !y || !z) {
        throw ValidationError("curve definition needs expression strings x, y, z");
    }
    const auto domain = interval_from(t, "domain");
    if (!domain) throw ValidationError("curve definition needs domain = [t_min, t_max]");
    if (!(domain->hi > domain->lo)) throw ValidationError("curve domain must be non-empty");
    const auto params = number_table(t, "parameters");
    return SpaceCurve::from_expressions(
        Expression::parse(x->as_string(), params), Expression::parse(y->as_string(), params),
        Expression::parse(z->as_string(), params), params, *domain, name);
}

SpaceCurve curve_from_toml_file(const std::string& path) {
    return curve_from_toml(toml::parse_file(path), fs::path(path).stem().string());
}

SpaceCurve scene_spherical_curve(const Scene& scene) {
    if (scene.source == "gallery") {
        const GalleryEntry entry = make_gallery_entry(scene.gallery, scene.gallery_params);
        const Interval window =
            scene.t_range.value_or(entry.construction_domain.value_or(entry.domain));
        return entry.binormal.restricted(window);
    }
    if (scene.source == "file") {
        if (scene.curve_file.empty()) throw ValidationError("curve.file is not set");
        SpaceCurve c = curve_from_toml_file(scene.curve_file);
        return scene.t_range ? c.restricted(*scene.t_range) : c;
    }
    // inline
    if (scene.inline_x.empty() || scene.inline_y.empty() || scene.inline_z.empty()) {
        throw ValidationError("inline curve needs x, y, z expressions");
    }
    if (!scene.inline_domain) throw ValidationError("inline curve needs a domain");
    SpaceCurve c = SpaceCurve::from_expressions(
        Expression::parse(scene.inline_x, scene.inline_params),
        Expression::parse(scene.inline_y, scene.inline_params),
        Expression::parse(scene.inline_z, scene.inline_params), scene.inline_params,
        *scene.inline_domain, "inline");
    return scene.t_range ? c.restricted(*scene.t_range) : c;
}

RuledPatch scene_patch(const Scene& scene) {
    scene.validate();
    if (scene.patch_kind == "helicoid") {
        const Interval t = scene.t_range.value_or(Interval{0.0, 2.0 * M_PI});
        return helicoid(scene.helicoid_a, scene.helicoid_b, t, scene.u_range);
    }
    if (scene.patch_kind == "right_conoid") {
        const Interval t = scene.t_range.value_or(Interval{0.25, 1.75});
        return right_conoid(scene.conoid_w, t, scene.u_range);
    }
    if (scene.patch_kind == "tangent_developable") {
        return tangent_developable_circle(scene.u_range);
    }
    if (scene.patch_kind != "canonical") {
        throw ValidationError("unknown patch kind '" + scene.patch_kind + "'");
    }
    if (scene.source == "gallery") {
        const GalleryEntry entry = make_gallery_entry(scene.gallery, scene.gallery_params);
        RuledPatch p = canonical_patch(entry, scene.u_range);
        if (scene.t_range) {
            p.t_range = *scene.t_range;
            p.alpha = p.alpha.restricted(*scene.t_range);
            p.beta = p.beta.restricted(*scene.t_range);
        }
        return p;
    }
    const SpaceCurve B = scene_spherical_curve(scene);
    const double t0 = scene.base_point.value_or(B.domain().midpoint());
    const ConstructedCurve constructed = integrate_alpha(B, scene.tau0, t0, scene.quad_tol);
    return canonical_patch(constructed, B, scene.u_range);
}

json spherical_check_json(const SphericalCurveCheck& c) {
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

json ricci_report_json(const RicciReport& r, double threshold) {
    json j = {{"grid", {{"n_t", r.n_t}, {"n_u", r.n_u}}},
              {"h", r.h},
              {"max_normalized_residual", r.max_normalized},
              {"mean_normalized_residual", r.mean_normalized},
              {"rms_normalized_residual", r.rms_normalized},
              {"max_raw_residual", r.max_raw},
              {"threshold", threshold},
              {"pass", r.max_normalized <= threshold}};
    if (r.convergence_order) {
        j["convergence_order"] = *r.convergence_order;
    } else {
        j["convergence_order"] = nullptr;
    }
    return j;
}

nlohmann::json cmd_construct(const Scene& scene) {
    scene.validate();
    const SpaceCurve B = scene_spherical_curve(scene);
    const SphericalCurveCheck check = validate_spherical(B, std::max(200, scene.n_t));
    if (!check.pass()) {
        ValidationError err("spherical-curve validation failed for the construction input");
        err.set_detail(spherical_check_json(check).dump(2));
        throw err;
    }
    if (scene.tau0 == 0.0) throw ValidationError("construct.tau0 must be non-zero");
    const double t0 = scene.base_point.value_or(B.domain().midpoint());
    const ConstructedCurve constructed = integrate_alpha(B, scene.tau0, t0, scene.quad_tol);

    const std::string dir = ensure_out_dir(scene);
    const std::string stem = scene_stem(scene);

    std::string csv = "t,x,y,z\n";
    const Interval dom = constructed.curve.domain();
    for (int i = 0; i < scene.n_t; ++i) {
        const double t = dom.lo + dom.length() * i / (scene.n_t - 1);
        const Vec3 p = constructed.curve.position(t);
        csv += format_double(t) + "," + format_double(p.x()) + "," + format_double(p.y()) + "," +
               format_double(p.z()) + "\n";
    }
    const std::string csv_path = dir.empty() ? "" : dir + "/" + stem + "_alpha.csv";
    if (!csv_path.empty()) write_text_file(csv_path, csv);

    const RuledPatch patch = canonical_patch(constructed, B, scene.u_range);
    const MeshBuffer mesh = sample_mesh(patch, scene.n_t, scene.n_u);
    const std::string obj_path = dir.empty() ? "" : dir + "/" + stem + ".obj";
    const std::string scalars_path = dir.empty() ? "" : dir + "/" + stem + "_scalars.csv";
    if (!obj_path.empty()) {
        write_obj(mesh, obj_path);
        write_scalar_csv(mesh, scalars_path);
    }

    return {{"check", spherical_check_json(check)},
            {"tau0", constructed.tau0},
            {"t0", constructed.base_point},
            {"quad_tol", constructed.tolerance},
            {"vertices", static_cast<int>(mesh.vertices.size())},
            {"alpha_csv", csv_path},
            {"obj", obj_path},
            {"scalar_csv", scalars_path}};
}

nlohmann::json cmd_check(const Scene& scene) {
    scene.validate();
    const RuledPatch patch = scene_patch(scene);
    const MetricField field = metric_field_from_patch(patch);
    const RicciReport report =
        ricci_residual_fd(field, scene.check_n_t, scene.check_n_u, scene.h, scene.refine);
    json j = ricci_report_json(report, scene.tol);
    j["patch"] = scene_stem(scene);
    j["per_point_csv"] = nullptr;
    if (!scene.out_dir.empty()) {
        const std::string dir = ensure_out_dir(scene);
        std::string csv = "t,u,raw,normalized\n";
        for (const PointResidual& p : report.points) {
            csv += format_double(p.t) + "," + format_double(p.u) + "," + format_double(p.raw) +
                   "," + format_double(p.normalized) + "\n";
        }
        const std::string path = dir + "/" + scene_stem(scene) + "_residuals.csv";
        write_text_file(path, csv);
        j["per_point_csv"] = path;
    }
    return j;
}

std::string cmd_report_csv(const Scene& scene) {
    scene.validate();
    const RuledPatch patch = scene_patch(scene);
    const bool has_closed_mean = patch.kind != RuledPatch::Kind::generic;
    std::string csv = "t,u,E,F,G,K_closed,K_forms,H_closed,H_forms,lambda\n";
    std::vector<std::string> rows(static_cast<std::size_t>(scene.n_t));
    parallel_for(scene.n_t, [&](int i) {
        const double t = patch.t_range.lo + patch.t_range.length() * i / (scene.n_t - 1);
        std::string& row = rows[static_cast<std::size_t>(i)];
        for (int jx = 0; jx < scene.n_u; ++jx) {
            const double u = patch.u_range.lo + patch.u_range.length() * jx / (scene.n_u - 1);
            const MetricSample m = first_fundamental_form(patch, t, u);
            const ShapeSample s = shape_operator_sample(patch, t, u);
            const double k_closed = gauss_curvature_closed(patch, t, u);
            const double lam = distribution_parameter(patch, t);
            row += format_double(t) + "," + format_double(u) + "," + format_double(m.E) + "," +
                   format_double(m.F) + "," + format_double(m.G) + "," + format_double(k_closed) +
                   "," + format_double(s.K) + ",";
            row += has_closed_mean ? format_double(mean_curvature_closed(patch, t, u)) : "";
            row += "," + format_double(s.H) + "," + format_double(lam) + "\n";
        }
    });
    for (const std::string& row : rows) csv += row;
    return csv;
}

nlohmann::json cmd_report(const Scene& scene, std::string* csv_out) {
    const std::string csv = cmd_report_csv(scene);
    json j = {{"patch", scene_stem(scene)},
              {"rows", scene.n_t * scene.n_u},
              {"csv", nullptr}};
    if (!scene.out_dir.empty()) {
        const std::string dir = ensure_out_dir(scene);
        const std::string path = dir + "/" + scene_stem(scene) + "_report.csv";
        write_text_file(path, csv);
        j["csv"] = path;
    }
    if (csv_out) *csv_out = csv;
    return j;
}

nlohmann::json cmd_export(const Scene& scene) {
    scene.validate();
    const RuledPatch patch = scene_patch(scene);
    const MeshBuffer mesh = sample_mesh(patch, scene.n_t, scene.n_u);
    const std::string dir = ensure_out_dir(scene);
    const std::string stem = scene_stem(scene);
    json j = {{"patch", stem},
              {"vertices", static_cast<int>(mesh.vertices.size())},
              {"quads", static_cast<int>(mesh.quads.size())},
              {"obj", nullptr},
              {"scalar_csv", nullptr}};
    if (!dir.empty()) {
        const std::string obj_path = dir + "/" + stem + ".obj";
        const std::string scalars_path = dir + "/" + stem + "_scalars.csv";
        write_obj(mesh, obj_path);
        write_scalar_csv(mesh, scalars_path);
        j["obj"] = obj_path;
        j["scalar_csv"] = scalars_path;
    }
    return j;
}

std::string gallery_list_text() {
    std::string out;
    for (const std::string& name : gallery_names()) {
        out += name + "  [" + gallery_param_doc(name) + "]\n";
        const GalleryEntry e = make_gallery_entry(name, {});
        out += "    domain [" + format_double(e.domain.lo) + ", " + format_double(e.domain.hi) +
               "], tau0 = " + format_double(e.tau0) + "\n";
        out += "    " + e.notes + "\n";
    }
    out += "helicoid  [a != 0, b free]\n    X(t,u) = (0,0,at+b) + u(cos t, sin t, 0); "
           "the straight-striction-line Ricci surface\n";
    out += "right_conoid  [w(t) expression]\n    X(t,u) = (0,0,w(t)) + u(cos t, sin t, 0); "
           "Ricci only when w is affine\n";
    return out;
}

nlohmann::json gallery_show_json(const std::string& name,
                                 const std::map<std::string, double>& params) {
    const GalleryEntry e = make_gallery_entry(name, params);
    const Interval probe = e.construction_domain.value_or(e.domain);
    // torsion at an interior probe away from any curvature zero
    const double t_probe = probe.lo + 0.37 * probe.length();
    const FrenetData f = frenet(e.alpha, t_probe);
    const double dev =
        verify_binormal(e.alpha.restricted(probe), e.binormal.restricted(probe), 100);
    json j = {{"name", e.name},
              {"params", e.params},
              {"domain", {e.domain.lo, e.domain.hi}},
              {"tau0", e.tau0},
              {"notes", e.notes},
              {"torsion_at_probe", f.torsion},
              {"curvature_at_probe", f.curvature},
              {"binormal_deviation", dev}};
    if (e.construction_domain) {
        j["construction_domain"] = {e.construction_domain->lo, e.construction_domain->hi};
    }
    return j;
}

}  // namespace rr
