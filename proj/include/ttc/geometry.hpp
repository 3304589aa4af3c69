#pragma once

#include <array>
#include <cmath>

namespace ttc {

struct Point3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline double dot(const Point3& a, const Point3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Point3& a) { return std::sqrt(dot(a, a)); }

inline double distance(const Point3& a, const Point3& b) { return norm(a - b); }

/// Element of a mesh: four indices into a shared vertex array.
struct Tetrahedron {
  std::array<int, 4> v{};
};

inline double signed_volume(const Point3& a, const Point3& b, const Point3& c,
                            const Point3& d) {
  const Point3 ab = b - a, ac = c - a, ad = d - a;
  const double det = ab.x * (ac.y * ad.z - ac.z * ad.y) -
                     ab.y * (ac.x * ad.z - ac.z * ad.x) +
                     ab.z * (ac.x * ad.y - ac.y * ad.x);
  return det / 6.0;
}

inline Point3 barycenter(const std::array<Point3, 4>& p) {
  return {(p[0].x + p[1].x + p[2].x + p[3].x) * 0.25,
          (p[0].y + p[1].y + p[2].y + p[3].y) * 0.25,
          (p[0].z + p[1].z + p[2].z + p[3].z) * 0.25};
}

/// Largest distance from the barycenter to a vertex.
inline double max_radius(const std::array<Point3, 4>& p) {
  const Point3 c = barycenter(p);
  double r = 0.0;
  for (const auto& q : p) r = std::max(r, distance(q, c));
  return r;
}

}  // namespace ttc
