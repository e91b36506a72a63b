//! \file mesh.hpp
//  \brief uniform Cartesian mesh indexing for zones, faces, edges and vertices
//         in 2D/3D, with every zone mapped to the reference element [-1/2,1/2]^d.
//
// Staggered layout. Vertices sit at origin + (i*dx, j*dy, k*dz). Zone (i,j,k)
// spans [x_i, x_{i+1}] x ... . An edge of axis a indexed (i,j,k) starts at
// vertex (i,j,k) and runs one spacing along a.
//
// Edge labels within a zone follow the cyclic convention (a; t1, t2) with
// (x;y,z), (y;z,x), (z;x,y):  1=(t1-,t2-)  2=(t1+,t2-)  3=(t1-,t2+)  4=(t1+,t2+).
// This is the assignment under which the discrete circulation identities of the
// reconstruction modules hold; the identity tests in tests/ pin it down.

#ifndef CURLMESH_MESH_HPP_
#define CURLMESH_MESH_HPP_

#include <array>
#include <cstdint>

namespace curlmesh {

enum class Axis : int { X = 0, Y = 1, Z = 2 };
enum class Boundary { Periodic, DirichletExact };

using ZoneIndex = std::array<int, 3>;

struct EdgeIndex {
  Axis axis{Axis::X};
  std::array<int, 3> idx{0, 0, 0};
  friend bool operator==(const EdgeIndex&, const EdgeIndex&) = default;
};

struct MeshSpec {
  int dim = 2;                                   // 2 or 3
  std::array<int, 3> n{1, 1, 1};                 // zone extents (n[2]=1 in 2D)
  std::array<double, 3> spacing{1.0, 1.0, 1.0};  // physical zone size
  std::array<double, 3> origin{0.0, 0.0, 0.0};   // low corner
  Boundary boundary = Boundary::Periodic;

  static MeshSpec make2d(int nx, int ny, double dx, double dy, double ox, double oy,
                         Boundary b);
  static MeshSpec make3d(int nx, int ny, int nz, double dx, double dy, double dz,
                         double ox, double oy, double oz, Boundary b);

  std::int64_t zone_count() const {
    return std::int64_t(n[0]) * n[1] * (dim == 3 ? n[2] : 1);
  }
  std::array<double, 3> zone_center(const ZoneIndex& z) const;
  std::array<double, 3> vertex(const std::array<int, 3>& v) const;
  std::array<double, 3> edge_midpoint(const EdgeIndex& e) const;

  //! wrap an edge index to its canonical representative (periodic meshes)
  EdgeIndex canonical(EdgeIndex e) const;

  //! zone -> bounding edges, ordered per the label convention above.
  //! 2D: {x-bottom, x-top, y-left, y-right}; 3D: x1..x4, y1..y4, z1..z4.
  void zone_edges(const ZoneIndex& z, EdgeIndex out[12]) const;
  int edges_per_zone() const { return dim == 2 ? 4 : 12; }

  //! physical point -> reference coordinates of zone z, each in [-1/2,1/2]
  std::array<double, 3> ref_coords(const ZoneIndex& z,
                                   const std::array<double, 3>& p) const;

  void validate() const;  // throws std::invalid_argument on a bad spec
};

}  // namespace curlmesh

#endif  // CURLMESH_MESH_HPP_
