//! \file recon3d.hpp
//  \brief curl-free / curl-preserving reconstruction on the 3D unit zone,
//         orders 1-3, face-circulation operators and zone averages.
//
// Edge labels per axis follow mesh.hpp: for component a with cyclic transverse
// axes (t1,t2), edge 1=(t1-,t2-), 2=(t1+,t2-), 3=(t1-,t2+), 4=(t1+,t2+).
//
// Each component carries, besides its four edge polynomials blended by the
// bilinear corner weights, bubble modes that vanish on all four of its own
// edges. Lowercase coefficients are required already for curl-free data;
// the "cap_*" families (the paper-style capital coefficients) carry the
// mixed circulation moments and vanish in curl-free mode.

#ifndef CURLMESH_RECON3D_HPP_
#define CURLMESH_RECON3D_HPP_

#include <array>

#include "curlmesh/recon2d.hpp"  // Edge1D

namespace curlmesh::recon3d {

using recon2d::Edge1D;

//! 12 edges: e[axis][label-1], moments along the edge's own axis
struct EdgeMoments3D {
  std::array<std::array<Edge1D, 4>, 3> e{};
  const Edge1D& at(int axis, int label) const { return e[axis][label - 1]; }
  Edge1D& at(int axis, int label) { return e[axis][label - 1]; }
};

//! signed mean-value circulations of the six faces; exactly one linear
//! dependency ties them (dependency() is identically zero)
struct FaceCirculations {
  double xm = 0, xp = 0, ym = 0, yp = 0, zm = 0, zp = 0;
  double dependency() const { return (xp - xm) + (yp - ym) + (zp - zm); }
};

FaceCirculations face_circulations(const EdgeMoments3D& edges);

//! Free moments of the circulation vector polynomial. The constants and the
//! own-axis linear terms are always recomputed from the edge means and are
//! not settable; the own-axis diagonal quadratic moments are determined by
//! the divergence-free constraints and exposed as accessors.
struct CurlMoments3D {
  // transverse linear moments (order >= 2)
  double dy_rx = 0, dz_rx = 0, dx_ry = 0, dz_ry = 0, dx_rz = 0, dy_rz = 0;
  // free diagonal quadratic moments (order 3)
  double dyy_rx = 0, dzz_rx = 0, dxx_ry = 0, dzz_ry = 0, dxx_rz = 0, dyy_rz = 0;
  // mixed quadratic moments (order 3)
  double dxy_rx = 0, dyz_rx = 0, dxz_rx = 0;
  double dxy_ry = 0, dyz_ry = 0, dxz_ry = 0;
  double dxy_rz = 0, dyz_rz = 0, dxz_rz = 0;
  // dependent diagonals from div R = 0
  double dxx_rx() const { return -0.5 * (dxy_ry + dxz_rz); }
  double dyy_ry() const { return -0.5 * (dxy_rx + dyz_rz); }
  double dzz_rz() const { return -0.5 * (dxz_rx + dyz_ry); }
};

enum class Mode3D { CurlFree, CurlPreserving };

//! bubble coefficients of one component in its local (a,t1,t2) frame;
//! basis: q2(t)=1-4t^2,
//!   c11 q2(t1), c22 q2(t2), c112 t2 q2(t1), c122 t1 q2(t2),
//!   c111 t1 q2(t1), c222 t2 q2(t2), c1112 t1 t2 q2(t1), c1222 t1 t2 q2(t2),
//!   cap112 t2 q2(t1), cap122 t1 q2(t2), capa1 a q2(t1), capa2 a q2(t2)
struct Bubbles {
  double c11 = 0, c22 = 0, c112 = 0, c122 = 0;
  double c111 = 0, c222 = 0, c1112 = 0, c1222 = 0;
  double cap112 = 0, cap122 = 0, capa1 = 0, capa2 = 0;
};

struct Recon3D {
  int order = 1;
  Mode3D mode = Mode3D::CurlFree;
  EdgeMoments3D edges;
  CurlMoments3D curl;
  Bubbles bx, by, bz;  // V^x:(x;y,z)  V^y:(y;z,x)  V^z:(z;x,y)

  std::array<double, 3> eval(double x, double y, double z) const;
  std::array<double, 3> curl_at(double x, double y, double z) const;  // analytic
  std::array<double, 3> target_curl(double x, double y, double z) const;
};

Recon3D reconstruct3d(int order, const EdgeMoments3D& edges, const CurlMoments3D& curl,
                      Mode3D mode);

//! closed-form zone averages (4th-order form; the mixed-moment corrections
//! require order-3 circulation data and are taken from `curl` as supplied)
std::array<double, 3> zone_average3d(const EdgeMoments3D& edges,
                                     const CurlMoments3D& curl);

}  // namespace curlmesh::recon3d

#endif  // CURLMESH_RECON3D_HPP_
