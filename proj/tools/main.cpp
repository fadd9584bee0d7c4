// ruled-ricci: construct and verify non-developable ruled Ricci surfaces
// from constant-torsion curves and their binormals. Front end over the
// shared-library C API.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "ruled_ricci.h"

namespace {

struct SceneDeleter {
    void operator()(rr_scene* s) const { rr_scene_free(s); }
};
using ScenePtr = std::unique_ptr<rr_scene, SceneDeleter>;

struct CommonOptions {
    std::string scene_file;
    std::string out_dir;
    std::string grid;
    double h = -1.0;
    double tol = -1.0;
    bool h2 = false;
    std::string gallery;
    std::vector<std::string> params;  // key=value pairs
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    // --h (the FD step) needs the short-form help flag out of the way
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--scene", opt.scene_file, "scene TOML file");
    cmd->add_option("--out", opt.out_dir, "output directory (flags override scene values)");
    cmd->add_option("--grid", opt.grid, "grid resolution NxM");
    cmd->add_option("--h", opt.h, "finite-difference step");
    cmd->add_option("--tol", opt.tol, "pass/fail threshold on the normalized residual");
    cmd->add_flag("--h2", opt.h2, "refine at h/2 and report the convergence order");
    cmd->add_option("--gallery", opt.gallery, "gallery entry (shortcut for curve.name)");
    cmd->add_option("--param", opt.params, "gallery/curve parameter key=value (repeatable)");
}

[[noreturn]] void fail(rr_status status) {
    std::fprintf(stderr, "error: %s\n", rr_last_error());
    const char* detail = rr_last_error_detail();
    if (detail && *detail) std::fprintf(stderr, "%s\n", detail);
    std::exit(status == RR_OK ? 1 : static_cast<int>(status));
}

void check(rr_status status) {
    if (status != RR_OK) fail(status);
}

ScenePtr build_scene(const CommonOptions& opt, bool grid_is_check_grid) {
    rr_scene* raw = nullptr;
    if (!opt.scene_file.empty()) {
        check(rr_scene_load(opt.scene_file.c_str(), &raw));
    } else {
        check(rr_scene_new(&raw));
    }
    ScenePtr scene(raw);
    auto set = [&](const std::string& key, const std::string& value) {
        check(rr_scene_set(scene.get(), key.c_str(), value.c_str()));
    };
    if (!opt.gallery.empty()) {
        set("curve.source", "gallery");
        set("curve.name", opt.gallery);
    }
    for (const std::string& kv : opt.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --param expects key=value, got '%s'\n", kv.c_str());
            std::exit(RR_ERR_VALIDATION);
        }
        set("curve.params." + kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!opt.grid.empty()) {
        const auto x = opt.grid.find('x');
        if (x == std::string::npos) {
            std::fprintf(stderr, "error: --grid expects NxM, got '%s'\n", opt.grid.c_str());
            std::exit(RR_ERR_VALIDATION);
        }
        const char* prefix = grid_is_check_grid ? "check" : "grid";
        set(std::string(prefix) + ".n_t", opt.grid.substr(0, x));
        set(std::string(prefix) + ".n_u", opt.grid.substr(x + 1));
    }
    if (opt.h > 0.0) set("check.h", std::to_string(opt.h));
    if (opt.tol > 0.0) set("check.tol", std::to_string(opt.tol));
    if (opt.h2) set("check.refine", "true");
    if (!opt.out_dir.empty()) set("output.dir", opt.out_dir);
    return scene;
}

void print_and_free(char* text) {
    if (text) {
        std::fputs(text, stdout);
        if (text[0] && text[std::string_view(text).size() - 1] != '\n') std::fputc('\n', stdout);
        rr_string_free(text);
    }
}

std::string params_json_from(const std::vector<std::string>& params) {
    if (params.empty()) return "";
    std::string j = "{";
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto eq = params[i].find('=');
        if (eq == std::string::npos) continue;
        if (j.size() > 1) j += ",";
        j += "\"" + params[i].substr(0, eq) + "\":" + params[i].substr(eq + 1);
    }
    j += "}";
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ruled Ricci surfaces from constant-torsion curves"};
    app.require_subcommand(1);

    // gallery
    auto* gallery_cmd = app.add_subcommand("gallery", "list or inspect the curve gallery");
    std::string show_name;
    std::string export_dir;
    std::vector<std::string> gallery_params;
    auto* list_cmd = gallery_cmd->add_subcommand("list", "list gallery entries");
    auto* show_cmd = gallery_cmd->add_subcommand("show", "show one entry");
    show_cmd->add_option("name", show_name, "entry name")->required();
    show_cmd->add_option("--param", gallery_params, "parameter key=value (repeatable)");
    show_cmd->add_option("--export", export_dir,
                         "write the entry's alpha/binormal curve-definition TOML here");
    gallery_cmd->require_subcommand(1);

    CommonOptions construct_opt, check_opt, report_opt, export_opt;
    auto* construct_cmd =
        app.add_subcommand("construct", "integrate a constant-torsion curve from B and mesh "
                                        "the canonical patch");
    add_common(construct_cmd, construct_opt);
    auto* check_cmd =
        app.add_subcommand("check", "finite-difference Ricci-condition residual of a patch");
    add_common(check_cmd, check_opt);
    auto* report_cmd =
        app.add_subcommand("report", "per-grid-point metric/curvature table as CSV");
    add_common(report_cmd, report_opt);
    auto* export_cmd = app.add_subcommand("export", "mesh a patch as OBJ plus scalar sidecar");
    add_common(export_cmd, export_opt);

    CLI11_PARSE(app, argc, argv);

    if (gallery_cmd->parsed()) {
        if (list_cmd->parsed()) {
            char* text = nullptr;
            check(rr_gallery_list(&text));
            print_and_free(text);
            return 0;
        }
        if (show_cmd->parsed()) {
            const std::string pj = params_json_from(gallery_params);
            char* text = nullptr;
            check(rr_gallery_show(show_name.c_str(), pj.empty() ? nullptr : pj.c_str(), &text));
            print_and_free(text);
            if (!export_dir.empty()) {
                for (const char* which : {"alpha", "binormal"}) {
                    char* toml_text = nullptr;
                    check(rr_gallery_curve_toml(show_name.c_str(),
                                                pj.empty() ? nullptr : pj.c_str(), which,
                                                &toml_text));
                    const std::string path =
                        export_dir + "/" + show_name + "_" + which + ".toml";
                    std::FILE* f = std::fopen(path.c_str(), "wb");
                    if (!f) {
                        std::fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
                        rr_string_free(toml_text);
                        return RR_ERR_IO;
                    }
                    std::fputs(toml_text, f);
                    std::fclose(f);
                    rr_string_free(toml_text);
                    std::fprintf(stdout, "wrote %s\n", path.c_str());
                }
            }
            return 0;
        }
    }

    if (construct_cmd->parsed()) {
        ScenePtr scene = build_scene(construct_opt, false);
        char* out = nullptr;
        check(rr_cmd_construct(scene.get(), &out));
        print_and_free(out);
        return 0;
    }
    if (check_cmd->parsed()) {
        ScenePtr scene = build_scene(check_opt, true);
        char* out = nullptr;
        const rr_status status = rr_cmd_check(scene.get(), &out);
        if (status == RR_OK || status == RR_CHECK_FAILED) {
            print_and_free(out);
            return static_cast<int>(status);
        }
        fail(status);
    }
    if (report_cmd->parsed()) {
        ScenePtr scene = build_scene(report_opt, false);
        char* out = nullptr;
        check(rr_cmd_report(scene.get(), &out));
        print_and_free(out);
        return 0;
    }
    if (export_cmd->parsed()) {
        ScenePtr scene = build_scene(export_opt, false);
        char* out = nullptr;
        check(rr_cmd_export(scene.get(), &out));
        print_and_free(out);
        return 0;
    }
    return 0;
}
