#include "curlmesh/mesh.hpp"

#include <cmath>
#include <stdexcept>

#include "curlmesh/parallel.hpp"

namespace curlmesh {

namespace {
int omp_default_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}
int g_threads = 0;
}  // namespace

int max_threads() { return g_threads > 0 ? g_threads : omp_default_threads(); }
void set_max_threads(int nthreads) { g_threads = nthreads; }

MeshSpec MeshSpec::make2d(int nx, int ny, double dx, double dy, double ox, double oy,
                          Boundary b) {
  MeshSpec m;
  m.dim = 2;
  m.n = {nx, ny, 1};
  m.spacing = {dx, dy, 1.0};
  m.origin = {ox, oy, 0.0};
  m.boundary = b;
  m.validate();
  return m;
}

MeshSpec MeshSpec::make3d(int nx, int ny, int nz, double dx, double dy, double dz,
                          double ox, double oy, double oz, Boundary b) {
  MeshSpec m;
  m.dim = 3;
  m.n = {nx, ny, nz};
  m.spacing = {dx, dy, dz};
  m.origin = {ox, oy, oz};
  m.boundary = b;
  m.validate();
  return m;
}

void MeshSpec::validate() const {
  if (dim != 2 && dim != 3) throw std::invalid_argument("mesh: dim must be 2 or 3");
  const int min_extent = (boundary == Boundary::Periodic) ? 1 : 2;
  for (int a = 0; a < dim; ++a) {
    if (n[a] < min_extent) throw std::invalid_argument("mesh: extent too small");
    if (!(spacing[a] > 0.0)) throw std::invalid_argument("mesh: spacing must be > 0");
  }
}

std::array<double, 3> MeshSpec::zone_center(const ZoneIndex& z) const {
  return {origin[0] + (z[0] + 0.5) * spacing[0], origin[1] + (z[1] + 0.5) * spacing[1],
          dim == 3 ? origin[2] + (z[2] + 0.5) * spacing[2] : 0.0};
}

std::array<double, 3> MeshSpec::vertex(const std::array<int, 3>& v) const {
  return {origin[0] + v[0] * spacing[0], origin[1] + v[1] * spacing[1],
          dim == 3 ? origin[2] + v[2] * spacing[2] : 0.0};
}

std::array<double, 3> MeshSpec::edge_midpoint(const EdgeIndex& e) const {
  const int a = static_cast<int>(e.axis);
  std::array<double, 3> p{};
  for (int d = 0; d < 3; ++d)
    p[d] = origin[d] + e.idx[d] * spacing[d] + (d == a ? 0.5 * spacing[d] : 0.0);
  if (dim == 2) p[2] = 0.0;
  return p;
}

EdgeIndex MeshSpec::canonical(EdgeIndex e) const {
  if (boundary != Boundary::Periodic) return e;
  for (int d = 0; d < dim; ++d) {
    int m = e.idx[d] % n[d];
    if (m < 0) m += n[d];
    e.idx[d] = m;
  }
  return e;
}

void MeshSpec::zone_edges(const ZoneIndex& z, EdgeIndex out[12]) const {
  for (int d = 0; d < dim; ++d) {
    if (z[d] < 0 || z[d] >= n[d]) throw std::out_of_range("zone out of range");
  }
  const int i = z[0], j = z[1], k = (dim == 3) ? z[2] : 0;
  if (dim == 2) {
    out[0] = canonical({Axis::X, {i, j, 0}});      // bottom
    out[1] = canonical({Axis::X, {i, j + 1, 0}});  // top
    out[2] = canonical({Axis::Y, {i, j, 0}});      // left
    out[3] = canonical({Axis::Y, {i + 1, j, 0}});  // right
    return;
  }
  // x-edges, transverse (y,z)
  out[0] = canonical({Axis::X, {i, j, k}});
  out[1] = canonical({Axis::X, {i, j + 1, k}});
  out[2] = canonical({Axis::X, {i, j, k + 1}});
  out[3] = canonical({Axis::X, {i, j + 1, k + 1}});
  // y-edges, transverse (z,x)
  out[4] = canonical({Axis::Y, {i, j, k}});
  out[5] = canonical({Axis::Y, {i, j, k + 1}});
  out[6] = canonical({Axis::Y, {i + 1, j, k}});
  out[7] = canonical({Axis::Y, {i + 1, j, k + 1}});
  // z-edges, transverse (x,y)
  out[8] = canonical({Axis::Z, {i, j, k}});
  out[9] = canonical({Axis::Z, {i + 1, j, k}});
  out[10] = canonical({Axis::Z, {i, j + 1, k}});
  out[11] = canonical({Axis::Z, {i + 1, j + 1, k}});
}

std::array<double, 3> MeshSpec::ref_coords(const ZoneIndex& z,
                                           const std::array<double, 3>& p) const {
  const auto c = zone_center(z);
  std::array<double, 3> r{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) {
    r[d] = (p[d] - c[d]) / spacing[d];
    if (std::abs(r[d]) > 0.5 + 1e-12)
      throw std::domain_error("ref_coords: point outside zone closure");
  }
  return r;
}

}  // namespace curlmesh
