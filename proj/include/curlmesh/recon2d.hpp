//! \file recon2d.hpp
//  \brief curl-free / curl-preserving reconstruction of an edge-collocated
//         vector field on the 2D unit zone, orders 1-4, with exact curl
//         evaluation and closed-form zone averages.
//
// Layout on the unit zone [-1/2,1/2]^2: V^x lives on the two x-edges
// (bottom y=-1/2, top y=+1/2), V^y on the two y-edges (left x=-1/2,
// right x=+1/2), each edge carrying Legendre moments along its own axis.
//
// The reconstruction adds bubble modes that vanish on the edges that carry
// the same component, so edge traces are reproduced exactly. Basis of the
// bubble coefficients (q2(t) = 1-4t^2, which is -4*L2(t) + 2/3):
//
//   V^x:  a_yy   q2(y)            a_yyy  y q2(y)        a_yyyy y^2 q2(y)
//         a_xxy  x^2 q2(y)        a_xyyy x y^2 q2(y)
//         a_xyy  x q2(y)             (order 3)
//         a_xyy  x q2(x) q2(y)       (order 4 zone bubble)
//   V^y:  mirror image with x<->y and b_* names.
//
// The coefficients are the unique solution of matching the analytic curl of
// the expansion against the prescribed circulation polynomial; the remaining
// one-parameter freedom at order 4 is closed either by the least-squares
// option (default) or by the exact-curl option (see O4Closure).

#ifndef CURLMESH_RECON2D_HPP_
#define CURLMESH_RECON2D_HPP_

#include <optional>
#include <utility>

namespace curlmesh::recon2d {

//! Legendre moments of one edge's collocated component along the edge axis
struct Edge1D {
  double avg = 0.0;  // mean value
  double d1 = 0.0;   // undivided slope  (coefficient of t)
  double d2 = 0.0;   // coefficient of t^2 - 1/12
  double d3 = 0.0;   // coefficient of t^3 - 3t/20
};

//! the four edges of a zone: V_x on bottom/top, V_y on left/right
struct EdgeMoments2D {
  Edge1D xb, xt, yl, yr;
  //! discrete circulation of the mean values (the derived zeroth curl moment)
  double circulation() const { return xb.avg - xt.avg + yr.avg - yl.avg; }
};

//! free modes of the zone's circulation polynomial; the mean is always
//! derived from the edge means and cannot be set independently
struct CurlMoments2D {
  double dx = 0.0, dy = 0.0;                              // order >= 2
  double dxx = 0.0, dyy = 0.0, dxy = 0.0;                 // order >= 3
  double dxxx = 0.0, dyyy = 0.0, dxxy = 0.0, dxyy = 0.0;  // order >= 4
};

enum class O4Closure {
  LeastSquares,  // match curl through the prescribed modes, minimize the rest
  ExactCurl      // match every curl mode exactly (ties the two zone modes)
};

struct Recon2D {
  int order = 1;
  EdgeMoments2D edges;
  CurlMoments2D curl;
  // V^x bubble coefficients
  double a_yy = 0, a_yyy = 0, a_yyyy = 0, a_xxy = 0, a_xyy = 0, a_xyyy = 0;
  // V^y bubble coefficients
  double b_xx = 0, b_xxx = 0, b_xxxx = 0, b_xyy = 0, b_xxy = 0, b_xxyy = 0;
  // zone-centered modes (order 4): coefficients of x*L2(y) in V^x / y*L2(x) in V^y
  double vx_m10 = 0, vy_m9 = 0;
  // induced quartic curl coefficient of x*L3(y) + y*L3(x) (zero under ExactCurl)
  double curl_q4 = 0;

  std::pair<double, double> eval(double x, double y) const;  // (V^x, V^y)
  double curl_at(double x, double y) const;    // analytic d(V^y)/dx - d(V^x)/dy
  double target_curl(double x, double y) const;  // prescribed circulation poly
};

//! Build the reconstruction. zone_modes supplies (vx_m10, vy_m9) at order 4
//! (a DG scheme evolves them; an FV scheme recovers them from neighbor zone
//! averages, see zone_modes_from_averages). Defaults to (0,0).
Recon2D reconstruct2d(int order, const EdgeMoments2D& edges, const CurlMoments2D& curl,
                      std::optional<std::pair<double, double>> zone_modes = std::nullopt,
                      O4Closure closure = O4Closure::LeastSquares);

//! closed-form zone averages of the reconstruction (exact for orders 1-4)
std::pair<double, double> zone_average2d(const EdgeMoments2D& edges,
                                         const CurlMoments2D& curl);

//! Recover the order-4 zone modes from the 3x3 neighborhood of zone averages.
//! avx/avy are row-major 3x3 arrays of <V^x>/<V^y> (index [jy*3+ix], the
//! center zone at [4]), exact for fields of total degree <= 4.
std::pair<double, double> zone_modes_from_averages(const double avx[9],
                                                   const double avy[9]);

//! WENO reconstruction of the free circulation moments from a centered
//! (2r+1)^2 row-major window of zone circulations, r = radius(order). The
//! window's center value matches the zone's derived mean by construction.
CurlMoments2D circulation_moments_fv(int order, const double* window, int r);

}  // namespace curlmesh::recon2d

#endif  // CURLMESH_RECON2D_HPP_
