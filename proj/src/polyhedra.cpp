#include <cmath>
#include <stdexcept>

#include "diswl/counterexamples.hpp"

namespace diswl {

std::string_view to_string(PolyhedronKind kind) {
  switch (kind) {
    case PolyhedronKind::icosahedron: return "icosahedron";
    case PolyhedronKind::dodecahedron: return "dodecahedron";
    case PolyhedronKind::cube: return "cube";
    case PolyhedronKind::octahedron: return "octahedron";
  }
  return "unknown";
}

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;

std::vector<Vec3> cube_vertices() {
  std::vector<Vec3> v;
  for (double x : {1.0, -1.0})
    for (double y : {1.0, -1.0})
      for (double z : {1.0, -1.0}) v.emplace_back(x, y, z);
  return v;
}

std::vector<Vec3> raw_vertices(PolyhedronKind kind) {
  std::vector<Vec3> v;
  switch (kind) {
    case PolyhedronKind::icosahedron:
      for (double s1 : {1.0, -1.0}) {
        for (double s2 : {1.0, -1.0}) {
          v.emplace_back(0.0, s1, s2 * kPhi);
          v.emplace_back(s1, s2 * kPhi, 0.0);
          v.emplace_back(s2 * kPhi, 0.0, s1);
        }
      }
      break;
    case PolyhedronKind::dodecahedron: {
      v = cube_vertices();
      const double inv = 1.0 / kPhi;
      for (double s1 : {1.0, -1.0}) {
        for (double s2 : {1.0, -1.0}) {
          v.emplace_back(0.0, s1 * inv, s2 * kPhi);
          v.emplace_back(s1 * inv, s2 * kPhi, 0.0);
          v.emplace_back(s1 * kPhi, 0.0, s2 * inv);
        }
      }
      break;
    }
    case PolyhedronKind::cube: v = cube_vertices(); break;
    case PolyhedronKind::octahedron:
      v = {Vec3(1, 0, 0), Vec3(-1, 0, 0), Vec3(0, 1, 0), Vec3(0, -1, 0), Vec3(0, 0, 1), Vec3(0, 0, -1)};
      break;
  }
  return v;
}

}  // namespace

Polyhedron polyhedron(PolyhedronKind kind, double circumradius) {
  if (!(circumradius > 0.0) || !std::isfinite(circumradius)) {
    throw std::invalid_argument("circumradius must be positive");
  }
  Polyhedron p;
  p.kind = kind;
  p.circumradius = circumradius;
  p.vertices = raw_vertices(kind);
  if (p.vertices.empty()) throw std::invalid_argument("unknown polyhedron kind");
  const double raw_radius = p.vertices.front().norm();
  for (auto& x : p.vertices) x *= circumradius / raw_radius;
  return p;
}

}  // namespace diswl
