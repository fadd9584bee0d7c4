#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ruledricci/gallery.hpp"
#include "ruledricci/ricci.hpp"
#include "ruledricci/toml.hpp"

namespace rr {

/// Declarative description of one experiment: a curve or patch source, the
/// sampling grid, FD step, tolerances, and output paths. Loaded from a TOML
/// scene file; individual keys can be overridden (CLI flags map onto
/// `set`). Commands are deterministic given a scene: identical bytes out.
struct Scene {
    // [curve]
    std::string source = "gallery";  // gallery | file | inline
    std::string gallery = "borderline";
    std::map<std::string, double> gallery_params;
    std::string curve_file;
    std::string inline_x, inline_y, inline_z;
    std::map<std::string, double> inline_params;
    std::optional<Interval> inline_domain;

    // [patch]
    std::string patch_kind = "canonical";  // canonical | helicoid | right_conoid | tangent_developable
    double helicoid_a = 1.0;
    double helicoid_b = 0.0;
    std::string conoid_w = "t^2";
    std::optional<Interval> t_range;  // override of the source's natural window
    Interval u_range{-2.0, 2.0};

    // [grid]
    int n_t = 200;
    int n_u = 50;

    // [check]
    int check_n_t = 10;
    int check_n_u = 10;
    double h = 1e-3;
    double tol = 1e-3;
    bool refine = false;

    // [construct]
    double tau0 = 1.0;
    double quad_tol = 1e-9;
    std::optional<double> base_point;

    // [output]
    std::string out_dir = "out";

    static Scene from_toml(const toml::Table& table);
    static Scene load(const std::string& path);

    /// Override one value by its dotted TOML key, e.g. set("check.h", "5e-4").
    void set(const std::string& dotted_key, const std::string& value);

    void validate() const;
};

/// Curve-definition TOML -> SpaceCurve (components x, y, z, a parameters
/// table, domain = [t_min, t_max]).
SpaceCurve curve_from_toml(const toml::Table& table, const std::string& name = "curve");
SpaceCurve curve_from_toml_file(const std::string& path);

/// The spherical curve B selected by the scene (gallery binormal restricted
/// to its construction window, a curve file, or inline expressions).
SpaceCurve scene_spherical_curve(const Scene& scene);

/// The patch selected by the scene; canonical patches from file/inline
/// sources run the constant-torsion construction first.
RuledPatch scene_patch(const Scene& scene);

/// Construction pipeline: validate B, integrate alpha, emit alpha CSV and
/// the canonical-patch mesh (OBJ + scalar sidecar). Returns a summary.
/// Validation failures throw ValidationError whose detail() carries the
/// SphericalCurveCheck JSON.
nlohmann::json cmd_construct(const Scene& scene);

/// Ricci-condition FD check of the scene's patch; "pass" compares the max
/// normalized residual against scene.tol. refine adds the convergence
/// order from an h/2 rerun.
nlohmann::json cmd_check(const Scene& scene);

/// Per-grid-point table (t, u, E, F, G, K_closed, K_forms, H_closed,
/// H_forms, lambda) for external plotting. H_closed is empty for patches
/// without a canonical mean-curvature formula.
std::string cmd_report_csv(const Scene& scene);
/// Writes the CSV when an output directory is set; csv_out receives the
/// table when non-null (single computation).
nlohmann::json cmd_report(const Scene& scene, std::string* csv_out = nullptr);

/// Mesh export of the scene's patch.
nlohmann::json cmd_export(const Scene& scene);

std::string gallery_list_text();
nlohmann::json gallery_show_json(const std::string& name,
                                 const std::map<std::string, double>& params);

nlohmann::json spherical_check_json(const SphericalCurveCheck& check);
nlohmann::json ricci_report_json(const RicciReport& report, double threshold);

}  // namespace rr
