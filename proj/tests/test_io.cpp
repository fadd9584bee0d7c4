#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ruledricci/mesh.hpp"
#include "ruledricci/numfmt.hpp"
#include "ruledricci/scene.hpp"
#include "ruledricci/toml.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rr_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("toml subset reader") {
    const auto t = rr::toml::parse(
        "# comment\n"
        "name = \"demo\"  # trailing\n"
        "count = 42\n"
        "ratio = -1.5e-3\n"
        "flag = true\n"
        "pair = [1.0, 2.5]\n"
        "[section]\n"
        "key = \"v\"\n"
        "[section.sub]\n"
        "x = 1\n");
    CHECK(rr::toml::string_or(t, "name", "") == "demo");
    CHECK(rr::toml::number_or(t, "count", 0) == 42.0);
    CHECK(rr::toml::number_or(t, "ratio", 0) == doctest::Approx(-1.5e-3));
    CHECK(rr::toml::bool_or(t, "flag", false));
    CHECK(rr::toml::find(t, "pair")->as_array() == std::vector<double>{1.0, 2.5});
    CHECK(rr::toml::string_or(t, "section.key", "") == "v");
    CHECK(rr::toml::number_or(t, "section.sub.x", 0) == 1.0);
    CHECK(rr::toml::find(t, "absent") == nullptr);
    CHECK_THROWS_AS((void)rr::toml::parse("key 1\n"), rr::ValidationError);
    CHECK_THROWS_AS((void)rr::toml::parse("k = [1, \n"), rr::ValidationError);
}

TEST_CASE("shortest round-trip formatting") {
    for (const double v : {0.1, 1.0 / 3.0, -2.5e-17, 3.14159265358979, 1e300}) {
        CHECK(std::stod(rr::format_double(v)) == v);
    }
    CHECK(rr::format_double(1.0) == "1");
    CHECK(rr::format_double(0.5) == "0.5");
}

TEST_CASE("obj writer") {
    SUBCASE("2x2 grid: 4 vertices, one quad 1 2 4 3") {
        const rr::RuledPatch p = rr::helicoid(1.0, 0.0, {0.0, 1.0}, {0.5, 1.5});
        const rr::MeshBuffer mesh = rr::sample_mesh(p, 2, 2);
        CHECK(mesh.vertices.size() == 4);
        REQUIRE(mesh.quads.size() == 1);
        const std::string text = rr::obj_text(mesh);
        CHECK(text.find("f 1 2 4 3") != std::string::npos);
        int v_lines = 0;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("v ", 0) == 0) ++v_lines;
        }
        CHECK(v_lines == 4);
    }
    SUBCASE("vertex count matches the grid") {
        const rr::RuledPatch p = rr::helicoid(1.0, 0.0, {0.0, 2.0}, {-1.0, 1.0});
        const rr::MeshBuffer mesh = rr::sample_mesh(p, 7, 5);
        CHECK(mesh.vertices.size() == 35);
        CHECK(mesh.quads.size() == 24);
    }
    SUBCASE("re-parsed vertices are bit-identical") {
        const rr::RuledPatch p =
            rr::canonical_patch(rr::parallel_circles(0.5), {-1.0, 1.0});
        const rr::MeshBuffer mesh = rr::sample_mesh(p, 5, 4);
        std::istringstream in(rr::obj_text(mesh));
        std::string token;
        std::size_t index = 0;
        while (in >> token) {
            if (token == "v") {
                double x, y, z;
                in >> x >> y >> z;
                REQUIRE(index < mesh.vertices.size());
                CHECK(x == mesh.vertices[index].x());
                CHECK(y == mesh.vertices[index].y());
                CHECK(z == mesh.vertices[index].z());
                ++index;
            }
        }
        CHECK(index == mesh.vertices.size());
    }
}

TEST_CASE("scene parsing and overrides") {
    const auto table = rr::toml::parse(
        "[curve]\n"
        "source = \"gallery\"\n"
        "name = \"parallel_circles\"\n"
        "[curve.params]\n"
        "ell = 0.25\n"
        "[patch]\n"
        "kind = \"canonical\"\n"
        "u_range = [-1.5, 1.5]\n"
        "[grid]\n"
        "n_t = 40\n"
        "n_u = 12\n"
        "[check]\n"
        "h = 0.0005\n"
        "tol = 0.002\n"
        "refine = true\n"
        "[output]\n"
        "dir = \"\"\n");
    rr::Scene s = rr::Scene::from_toml(table);
    CHECK(s.gallery == "parallel_circles");
    CHECK(s.gallery_params.at("ell") == 0.25);
    CHECK(s.u_range.lo == -1.5);
    CHECK(s.n_t == 40);
    CHECK(s.h == 0.0005);
    CHECK(s.refine);
    CHECK(s.out_dir.empty());

    s.set("check.h", "1e-3");
    CHECK(s.h == 1e-3);
    s.set("grid.n_t", "16");
    CHECK(s.n_t == 16);
    CHECK_THROWS_AS(s.set("nonsense.key", "1"), rr::ValidationError);

    rr::Scene bad = s;
    bad.n_t = 2;
    CHECK_THROWS_AS(bad.validate(), rr::ValidationError);
}

TEST_CASE("commands are deterministic byte for byte") {
    rr::Scene scene;
    scene.source = "gallery";
    scene.gallery = "parallel_circles";
    scene.gallery_params["ell"] = 0.5;
    scene.patch_kind = "canonical";
    scene.n_t = 12;
    scene.n_u = 8;
    scene.check_n_t = 5;
    scene.check_n_u = 5;
    scene.out_dir.clear();
    const std::string csv1 = rr::cmd_report_csv(scene);
    const std::string csv2 = rr::cmd_report_csv(scene);
    CHECK(csv1 == csv2);
    const auto check1 = rr::cmd_check(scene).dump();
    const auto check2 = rr::cmd_check(scene).dump();
    CHECK(check1 == check2);
    // worker count must not affect the bytes
    ::setenv("RULED_RICCI_THREADS", "1", 1);
    const std::string csv_serial = rr::cmd_report_csv(scene);
    ::setenv("RULED_RICCI_THREADS", "3", 1);
    const std::string csv_threads = rr::cmd_report_csv(scene);
    ::unsetenv("RULED_RICCI_THREADS");
    CHECK(csv_serial == csv1);
    CHECK(csv_threads == csv1);
}

TEST_CASE("cmd_report columns") {
    SUBCASE("helicoid: K column equals -1/(1+u^2)^2") {
        rr::Scene scene;
        scene.patch_kind = "helicoid";
        scene.helicoid_a = 1.0;
        scene.n_t = 6;
        scene.n_u = 5;
        scene.out_dir.clear();
        const std::string csv = rr::cmd_report_csv(scene);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);  // header
        CHECK(line == "t,u,E,F,G,K_closed,K_forms,H_closed,H_forms,lambda");
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(row, cell, ',')) cells.push_back(cell);
            REQUIRE(cells.size() == 10);
            const double u = std::stod(cells[1]);
            const double k_closed = std::stod(cells[5]);
            CHECK(std::abs(k_closed - (-1.0 / std::pow(1.0 + u * u, 2))) < 1e-12);
            CHECK(std::abs(std::stod(cells[7])) < 1e-12);  // H_closed = 0 on the helicoid
        }
    }
    SUBCASE("canonical patch: closed vs forms columns within 1e-7") {
        rr::Scene scene;
        scene.gallery = "parallel_circles";
        scene.gallery_params["ell"] = 0.75;
        scene.n_t = 8;
        scene.n_u = 6;
        scene.out_dir.clear();
        const std::string csv = rr::cmd_report_csv(scene);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(row, cell, ',')) cells.push_back(cell);
            const double k_closed = std::stod(cells[5]), k_forms = std::stod(cells[6]);
            const double h_closed = std::stod(cells[7]), h_forms = std::stod(cells[8]);
            CHECK(std::abs(k_closed - k_forms) <=
                  1e-7 * std::max(std::abs(k_closed), std::abs(k_forms)));
            CHECK(std::abs(h_closed - h_forms) <=
                  1e-7 * std::max(std::abs(h_closed), std::abs(h_forms)));
        }
    }
    SUBCASE("tangent developable: K columns at zero, H_closed empty") {
        rr::Scene scene;
        scene.patch_kind = "tangent_developable";
        scene.u_range = {0.5, 1.5};
        scene.n_t = 6;
        scene.n_u = 4;
        scene.out_dir.clear();
        const std::string csv = rr::cmd_report_csv(scene);
        std::istringstream in(csv);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::istringstream row(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(row, cell, ',')) cells.push_back(cell);
            CHECK(std::abs(std::stod(cells[5])) < 1e-9);
            CHECK(std::abs(std::stod(cells[6])) < 1e-9);
            CHECK(cells[7].empty());
        }
    }
}

TEST_CASE("cmd_construct writes alpha CSV, OBJ, and scalars") {
    TempDir tmp;
    rr::Scene scene;
    scene.source = "gallery";
    scene.gallery = "borderline";
    scene.patch_kind = "canonical";
    scene.u_range = {-2.0, 2.0};
    scene.n_t = 20;
    scene.n_u = 10;
    scene.out_dir = tmp.str();
    const auto summary = rr::cmd_construct(scene);
    CHECK(summary["vertices"] == 200);
    CHECK(summary["check"]["pass"] == true);
    CHECK(fs::exists(summary["alpha_csv"].get<std::string>()));
    CHECK(fs::exists(summary["obj"].get<std::string>()));
    CHECK(fs::exists(summary["scalar_csv"].get<std::string>()));
    // constructed positions match the printed closed form after alignment
    const std::string csv = slurp(summary["alpha_csv"].get<std::string>());
    const auto entry = rr::borderline();
    const double t0 = summary["t0"].get<double>();
    const rr::Vec3 offset = entry.alpha.position(t0);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,y,z");
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        REQUIRE(vals.size() == 4);
        const rr::Vec3 got(vals[1], vals[2], vals[3]);
        CHECK((got + offset - entry.alpha.position(vals[0])).norm() < 1e-6);
    }
}

TEST_CASE("cmd_construct rejects a great circle with the check as detail") {
    rr::Scene scene;
    scene.source = "inline";
    scene.inline_x = "cos(t)";
    scene.inline_y = "sin(t)";
    scene.inline_z = "0";
    scene.inline_domain = rr::Interval{0.0, 6.283185307179586};
    scene.out_dir.clear();
    try {
        (void)rr::cmd_construct(scene);
        FAIL("expected ValidationError");
    } catch (const rr::ValidationError& e) {
        CHECK_FALSE(e.detail().empty());
        const auto detail = nlohmann::json::parse(e.detail());
        CHECK(detail["pass"] == false);
        CHECK(detail["regularity_ok"] == false);
    }
}

TEST_CASE("cmd_check pass and fail") {
    rr::Scene scene;
    scene.patch_kind = "helicoid";
    scene.out_dir.clear();
    const auto pass = rr::cmd_check(scene);
    CHECK(pass["pass"] == true);
    CHECK(pass["max_normalized_residual"].get<double>() <= 1e-3);

    rr::Scene conoid;
    conoid.patch_kind = "right_conoid";
    conoid.conoid_w = "t^2";
    conoid.out_dir.clear();
    const auto fail_report = rr::cmd_check(conoid);
    CHECK(fail_report["pass"] == false);
    CHECK(fail_report["max_normalized_residual"].get<double>() > 1e-3);

    rr::Scene refine = scene;
    refine.refine = true;
    const auto order_report = rr::cmd_check(refine);
    const double order = order_report["convergence_order"].get<double>();
    CHECK(order > 1.7);
    CHECK(order < 2.3);
}

TEST_CASE("scene file -> spherical curve from expression TOML") {
    TempDir tmp;
    const std::string path = (tmp.path / "b.toml").string();
    {
        std::ofstream out(path);
        out << rr::gallery_curve_toml(rr::parallel_circles(0.5), "binormal");
    }
    rr::Scene scene;
    scene.source = "file";
    scene.curve_file = path;
    scene.out_dir.clear();
    const rr::SpaceCurve b = rr::scene_spherical_curve(scene);
    CHECK(rr::validate_spherical(b, 128).pass());
    const rr::RuledPatch p = rr::scene_patch(scene);  // construction route
    CHECK(rr::classify(p, 64).cls == rr::SurfaceClass::ricci);
}
