/*
 * C API for the ruled-Ricci kernel: construction of non-developable ruled
 * Ricci surfaces from constant-torsion curves and their binormals, with
 * numerical verification of the Ricci condition.
 *
 * Handles are opaque and must be released with the matching *_free call.
 * Every function returns rr_status; on failure rr_last_error() gives a
 * message and rr_last_error_detail() an optional JSON payload (both are
 * thread-local and valid until the next failing call on that thread).
 * Strings returned through char** are heap-allocated; release them with
 * rr_string_free.
 */

#ifndef RULED_RICCI_H
#define RULED_RICCI_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rr_status {
    RR_OK = 0,
    RR_CHECK_FAILED = 1,   /* a pass/fail check exceeded its threshold */
    RR_ERR_VALIDATION = 2, /* bad input or precondition violation */
    RR_ERR_NUMERIC = 3,    /* domain error, non-finite value, degeneracy */
    RR_ERR_IO = 4          /* file read/write failure */
} rr_status;

typedef struct rr_curve rr_curve;
typedef struct rr_patch rr_patch;
typedef struct rr_scene rr_scene;

const char* rr_version(void);
const char* rr_last_error(void);
const char* rr_last_error_detail(void);
void rr_string_free(char* s);
void rr_curve_free(rr_curve* c);
void rr_patch_free(rr_patch* p);
void rr_scene_free(rr_scene* s);

/* ---- curves ------------------------------------------------------- */

/* Gallery curve: name in {parallel_circles, anti_salkowski, borderline},
 * which in {"alpha", "binormal"}, params_json e.g. "{\"ell\":0.5}" or NULL. */
rr_status rr_curve_gallery(const char* name, const char* params_json, const char* which,
                           rr_curve** out);

/* Expression curve; params_json binds named constants, e.g. "{\"ell\":0.5}". */
rr_status rr_curve_from_exprs(const char* x, const char* y, const char* z,
                              const char* params_json, double t_min, double t_max,
                              rr_curve** out);

/* Curve-definition TOML file (x/y/z strings, [parameters], domain). */
rr_status rr_curve_from_toml_file(const char* path, rr_curve** out);

rr_status rr_curve_domain(const rr_curve* c, double* t_min, double* t_max);

/* out_jet = position, d1, d2, d3 as 4 consecutive xyz triples. */
rr_status rr_curve_eval(const rr_curve* c, double t, double out_jet[12]);

rr_status rr_curve_speed(const rr_curve* c, double t, double* out);
rr_status rr_curve_arc_length(const rr_curve* c, double t0, double t1, double* out);
rr_status rr_curve_reparametrize_arclength(const rr_curve* c, rr_curve** out);

typedef struct rr_frenet_data {
    double tangent[3];
    double normal[3];
    double binormal[3];
    double curvature;
    double torsion; /* convention B' = tau N */
    int regular;    /* 0: curvature below threshold, frame fields unset */
} rr_frenet_data;

rr_status rr_curve_frenet(const rr_curve* c, double t, rr_frenet_data* out);

/* ---- constant-torsion construction -------------------------------- */

typedef struct rr_spherical_check {
    double max_norm_deviation;  /* max | |B| - 1 |   */
    double max_speed_deviation; /* max | |B'| - 1 |  */
    double min_regularity;      /* min |<B x B', B''>| */
    int sign_change;            /* regularity scalar changes sign */
    int pass;
} rr_spherical_check;

rr_status rr_validate_spherical(const rr_curve* b, int grid, rr_spherical_check* out);

/* alpha(t) = (1/tau0) int_{t0}^{t} B' x B; alpha(t0) = 0. */
rr_status rr_integrate_alpha(const rr_curve* b, double tau0, double t0, double tol,
                             rr_curve** out);

/* Sign-insensitive max deviation between B and the Frenet binormal of alpha. */
rr_status rr_verify_binormal(const rr_curve* alpha, const rr_curve* b, int grid, double* out);

/* ---- ruled patches ------------------------------------------------- */

rr_status rr_patch_new(const rr_curve* alpha, const rr_curve* beta, double u_min, double u_max,
                       rr_patch** out);

/* Canonical patch (constant-torsion alpha, binormal ruling); verifies the
 * binormal correspondence before returning. */
rr_status rr_patch_canonical(const rr_curve* alpha, const rr_curve* b, double tau0,
                             double u_min, double u_max, rr_patch** out);

rr_status rr_patch_gallery_canonical(const char* name, const char* params_json, double u_min,
                                     double u_max, rr_patch** out);

rr_status rr_patch_helicoid(double a, double b, double t_min, double t_max, double u_min,
                            double u_max, rr_patch** out);

rr_status rr_patch_right_conoid(const char* w_expr, double t_min, double t_max, double u_min,
                                double u_max, rr_patch** out);

rr_status rr_patch_distribution_parameter(const rr_patch* p, double t, double* out);

/* out_efg = {E, F, G} of the first fundamental form. */
rr_status rr_patch_first_fundamental_form(const rr_patch* p, double t, double u,
                                          double out_efg[3]);

/* Closed form K = -lambda^2 / (lambda^2 + u^2)^2. */
rr_status rr_patch_gauss_curvature(const rr_patch* p, double t, double u, double* out);

/* Closed form H = -kappa/(2 sqrt(1 + tau0^2 u^2)); canonical patches only. */
rr_status rr_patch_mean_curvature(const rr_patch* p, double t, double u, double* out);

typedef struct rr_shape_sample {
    double L, M, N;   /* second fundamental form */
    double K, H;      /* extrinsic curvature quotients */
    double normal[3]; /* unit surface normal */
} rr_shape_sample;

rr_status rr_patch_shape_sample(const rr_patch* p, double t, double u, rr_shape_sample* out);

/* JSON: {"class": "developable"|"ricci"|"non_ricci", "lambda0": ..., ...} */
rr_status rr_patch_classify(const rr_patch* p, int probes, char** json_out);

/* Ricci-condition FD residual report as JSON; refine != 0 adds the
 * convergence-order estimate from an h/2 rerun. */
rr_status rr_patch_ricci_check(const rr_patch* p, int n_t, int n_u, double h, int refine,
                               double threshold, char** json_out);

/* ---- scenes and commands ------------------------------------------ */

rr_status rr_scene_new(rr_scene** out);
rr_status rr_scene_load(const char* path, rr_scene** out);

/* Override one scene value by dotted TOML key, e.g. ("check.h", "5e-4"). */
rr_status rr_scene_set(rr_scene* s, const char* key, const char* value);

/* Construction pipeline; on RR_ERR_VALIDATION the spherical-curve check is
 * available as JSON through rr_last_error_detail(). */
rr_status rr_cmd_construct(const rr_scene* s, char** json_out);

/* Returns RR_CHECK_FAILED (with the report still written to json_out) when
 * the max normalized residual exceeds the scene tolerance. */
rr_status rr_cmd_check(const rr_scene* s, char** json_out);

rr_status rr_cmd_report(const rr_scene* s, char** csv_out);
rr_status rr_cmd_export(const rr_scene* s, char** json_out);

/* ---- gallery ------------------------------------------------------- */

rr_status rr_gallery_list(char** text_out);
rr_status rr_gallery_show(const char* name, const char* params_json, char** json_out);

/* Curve-definition TOML for a gallery curve; which in {"alpha","binormal"}. */
rr_status rr_gallery_curve_toml(const char* name, const char* params_json, const char* which,
                                char** toml_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RULED_RICCI_H */
