#pragma once

#include <string>
#include <vector>

#include "ttc/geometry.hpp"

namespace ttc {

/// How each cube cell of a box mesh is split into tetrahedra.
enum class CubeSplit {
  kuhn6,      // 6 tets sharing the cube diagonal
  centers24,  // 24 tets through face centers and the body center
};

struct TetMesh {
  std::vector<Point3> vertices;
  std::vector<Tetrahedron> tets;

  std::array<Point3, 4> corners(const Tetrahedron& t) const {
    return {vertices[t.v[0]], vertices[t.v[1]], vertices[t.v[2]],
            vertices[t.v[3]]};
  }
};

/// Uniform tetrahedral mesh of the box [lo, hi]: cells_per_axis^3 cubes,
/// each split into 6 (or 24) positively oriented tetrahedra.
/// Throws std::invalid_argument for a degenerate box or cells < 1.
TetMesh build_box_mesh(const Point3& lo, const Point3& hi, int cells_per_axis,
                       CubeSplit split = CubeSplit::kuhn6);

/// Plain-text format: "N_vertices N_tets" header, vertex coordinate lines,
/// then 0-based 4-index element lines.
void save_mesh(const TetMesh& mesh, const std::string& path);
TetMesh load_mesh(const std::string& path);

}  // namespace ttc
