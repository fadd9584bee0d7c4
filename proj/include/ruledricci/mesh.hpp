#pragma once

#include <array>
#include <string>
#include <vector>

#include "ruledricci/surface.hpp"

namespace rr {

/// Quad mesh sampled from a (t, u) grid, vertices in row-major order
/// (t rows, u columns), with Gauss/mean curvature attribute channels.
struct MeshBuffer {
    int n_t = 0;
    int n_u = 0;
    std::vector<Vec3> vertices;                 // size n_t * n_u
    std::vector<std::array<int, 4>> quads;      // 0-based vertex indices
    std::vector<double> gauss;                  // per-vertex K
    std::vector<double> mean;                   // per-vertex H (extrinsic)

    int vertex_index(int i_t, int i_u) const { return i_t * n_u + i_u; }
};

/// Samples positions and curvatures over the patch rectangle; grid rows are
/// evaluated in parallel.
MeshBuffer sample_mesh(const RuledPatch& patch, int n_t, int n_u);

/// Plain OBJ: `v x y z` per vertex (17 significant digits, re-parses to the
/// identical double) and 1-based `f` quads. Scalar channels go to the CSV
/// sidecar keyed by vertex index, since OBJ has no standard attribute slot.
void write_obj(const MeshBuffer& mesh, const std::string& path);
std::string obj_text(const MeshBuffer& mesh);

void write_scalar_csv(const MeshBuffer& mesh, const std::string& path);
std::string scalar_csv_text(const MeshBuffer& mesh);

}  // namespace rr
