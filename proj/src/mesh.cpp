#include "ttc/mesh.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ttc {

namespace {

// Append one positively oriented tet; swaps a vertex pair if needed.
void push_tet(TetMesh& mesh, int a, int b, int c, int d) {
  const auto& v = mesh.vertices;
  if (signed_volume(v[a], v[b], v[c], v[d]) < 0.0) std::swap(c, d);
  mesh.tets.push_back(Tetrahedron{{a, b, c, d}});
}

}  // namespace

TetMesh build_box_mesh(const Point3& lo, const Point3& hi, int cells_per_axis,
                       CubeSplit split) {
  if (!(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z))
    throw std::invalid_argument("build_box_mesh: degenerate box");
  if (cells_per_axis < 1)
    throw std::invalid_argument("build_box_mesh: cells_per_axis must be >= 1");

  const int m = cells_per_axis;
  const double hx = (hi.x - lo.x) / m, hy = (hi.y - lo.y) / m,
               hz = (hi.z - lo.z) / m;

  TetMesh mesh;
  const int np = m + 1;
  mesh.vertices.reserve(size_t(np) * np * np);
  auto corner_id = [&](int i, int j, int k) { return (i * np + j) * np + k; };
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      for (int k = 0; k < np; ++k)
        mesh.vertices.push_back(
            {lo.x + i * hx, lo.y + j * hy, lo.z + k * hz});

  if (split == CubeSplit::kuhn6) {
    // Six tets per cube, all sharing the diagonal (i,j,k)-(i+1,j+1,k+1):
    // one per vertex ordering along the three axis steps.
    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                    {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (const auto& perm : perms) {
            int idx[3] = {i, j, k};
            int ids[4];
            ids[0] = corner_id(idx[0], idx[1], idx[2]);
            for (int s = 0; s < 3; ++s) {
              idx[perm[s]] += 1;
              ids[s + 1] = corner_id(idx[0], idx[1], idx[2]);
            }
            push_tet(mesh, ids[0], ids[1], ids[2], ids[3]);
          }
  } else {
    // 24 tets per cube: (cube center, face center, face edge endpoints).
    // Face centers are shared between adjacent cells.
    std::vector<int> face_x(size_t(np) * m * m, -1);  // faces normal to x
    std::vector<int> face_y(size_t(m) * np * m, -1);
    std::vector<int> face_z(size_t(m) * m * np, -1);
    auto face_center = [&](std::vector<int>& cache, size_t slot, double cx,
                           double cy, double cz) {
      if (cache[slot] < 0) {
        cache[slot] = int(mesh.vertices.size());
        mesh.vertices.push_back({cx, cy, cz});
      }
      return cache[slot];
    };

    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const double x0 = lo.x + i * hx, y0 = lo.y + j * hy,
                       z0 = lo.z + k * hz;
          const int body = int(mesh.vertices.size());
          mesh.vertices.push_back(
              {x0 + 0.5 * hx, y0 + 0.5 * hy, z0 + 0.5 * hz});

          const int fxm = face_center(face_x, (size_t(i) * m + j) * m + k,
                                      x0, y0 + 0.5 * hy, z0 + 0.5 * hz);
          const int fxp = face_center(face_x, (size_t(i + 1) * m + j) * m + k,
                                      x0 + hx, y0 + 0.5 * hy, z0 + 0.5 * hz);
          const int fym = face_center(face_y, (size_t(i) * np + j) * m + k,
                                      x0 + 0.5 * hx, y0, z0 + 0.5 * hz);
          const int fyp = face_center(face_y, (size_t(i) * np + j + 1) * m + k,
                                      x0 + 0.5 * hx, y0 + hy, z0 + 0.5 * hz);
          const int fzm = face_center(face_z, (size_t(i) * m + j) * np + k,
                                      x0 + 0.5 * hx, y0 + 0.5 * hy, z0);
          const int fzp = face_center(face_z, (size_t(i) * m + j) * np + k + 1,
                                      x0 + 0.5 * hx, y0 + 0.5 * hy, z0 + hz);

          auto c = [&](int di, int dj, int dk) {
            return corner_id(i + di, j + dj, k + dk);
          };
          // 4 edges per face; each face contributes 4 tets
          const int faces[6][5] = {
              {fxm, c(0, 0, 0), c(0, 1, 0), c(0, 1, 1), c(0, 0, 1)},
              {fxp, c(1, 0, 0), c(1, 1, 0), c(1, 1, 1), c(1, 0, 1)},
              {fym, c(0, 0, 0), c(1, 0, 0), c(1, 0, 1), c(0, 0, 1)},
              {fyp, c(0, 1, 0), c(1, 1, 0), c(1, 1, 1), c(0, 1, 1)},
              {fzm, c(0, 0, 0), c(1, 0, 0), c(1, 1, 0), c(0, 1, 0)},
              {fzp, c(0, 0, 1), c(1, 0, 1), c(1, 1, 1), c(0, 1, 1)}};
          for (const auto& f : faces)
            for (int e = 0; e < 4; ++e)
              push_tet(mesh, body, f[0], f[1 + e], f[1 + (e + 1) % 4]);
        }
  }
  return mesh;
}

void save_mesh(const TetMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_mesh: cannot write " + path);
  out.precision(17);
  out << mesh.vertices.size() << ' ' << mesh.tets.size() << '\n';
  for (const auto& p : mesh.vertices)
    out << p.x << ' ' << p.y << ' ' << p.z << '\n';
  for (const auto& t : mesh.tets)
    out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' ' << t.v[3] << '\n';
  if (!out) throw std::runtime_error("save_mesh: write failed for " + path);
}

TetMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_mesh: cannot open " + path);
  size_t nv = 0, nt = 0;
  if (!(in >> nv >> nt)) throw std::runtime_error("load_mesh: bad header");
  TetMesh mesh;
  mesh.vertices.resize(nv);
  for (auto& p : mesh.vertices)
    if (!(in >> p.x >> p.y >> p.z))
      throw std::runtime_error("load_mesh: bad vertex line");
  mesh.tets.resize(nt);
  for (auto& t : mesh.tets) {
    if (!(in >> t.v[0] >> t.v[1] >> t.v[2] >> t.v[3]))
      throw std::runtime_error("load_mesh: bad element line");
    for (int id : t.v)
      if (id < 0 || size_t(id) >= nv)
        throw std::runtime_error("load_mesh: vertex index out of range");
  }
  return mesh;
}

}  // namespace ttc
