#include "ruledricci/mesh.hpp"

#include <fstream>

#include "ruledricci/errors.hpp"
#include "ruledricci/numfmt.hpp"
#include "ruledricci/parallel.hpp"

namespace rr {

MeshBuffer sample_mesh(const RuledPatch& patch, int n_t, int n_u) {
    if (n_t < 2 || n_u < 2) throw ValidationError("mesh grid needs at least 2x2 vertices");
    MeshBuffer mesh;
    mesh.n_t = n_t;
    mesh.n_u = n_u;
    mesh.vertices.resize(static_cast<std::size_t>(n_t) * n_u);
    mesh.gauss.resize(mesh.vertices.size());
    mesh.mean.resize(mesh.vertices.size());
    parallel_for(n_t, [&](int i) {
        const double t = patch.t_range.lo + patch.t_range.length() * i / (n_t - 1);
        for (int j = 0; j < n_u; ++j) {
            const double u = patch.u_range.lo + patch.u_range.length() * j / (n_u - 1);
            const std::size_t idx = static_cast<std::size_t>(mesh.vertex_index(i, j));
            mesh.vertices[idx] = patch.point(t, u);
            const ShapeSample s = shape_operator_sample(patch, t, u);
            mesh.gauss[idx] = s.K;
            mesh.mean[idx] = s.H;
        }
    });
    mesh.quads.reserve(static_cast<std::size_t>(n_t - 1) * (n_u - 1));
    for (int i = 0; i + 1 < n_t; ++i) {
        for (int j = 0; j + 1 < n_u; ++j) {
            mesh.quads.push_back({mesh.vertex_index(i, j), mesh.vertex_index(i, j + 1),
                                  mesh.vertex_index(i + 1, j + 1), mesh.vertex_index(i + 1, j)});
        }
    }
    return mesh;
}

std::string obj_text(const MeshBuffer& mesh) {
    std::string out;
    out.reserve(mesh.vertices.size() * 64);
    out += "# ruled-ricci surface mesh, " + std::to_string(mesh.n_t) + "x" +
           std::to_string(mesh.n_u) + " grid\n";
    for (const Vec3& v : mesh.vertices) {
        out += "v " + format_double(v.x(), 17) + " " + format_double(v.y(), 17) + " " +
               format_double(v.z(), 17) + "\n";
    }
    for (const auto& q : mesh.quads) {
        out += "f " + std::to_string(q[0] + 1) + " " + std::to_string(q[1] + 1) + " " +
               std::to_string(q[2] + 1) + " " + std::to_string(q[3] + 1) + "\n";
    }
    return out;
}

void write_obj(const MeshBuffer& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << obj_text(mesh);
    if (!out) throw IoError("failed writing '" + path + "'");
}

std::string scalar_csv_text(const MeshBuffer& mesh) {
    std::string out = "vertex,K,H\n";
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        out += std::to_string(i + 1) + "," + format_double(mesh.gauss[i]) + "," +
               format_double(mesh.mean[i]) + "\n";
    }
    return out;
}

void write_scalar_csv(const MeshBuffer& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << scalar_csv_text(mesh);
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace rr
