//! \file weno.hpp
//  \brief 1D moment WENO kernels (orders 2-4) over unit-width cells, plus the
//         modal polynomial containers used by the multidimensional
//         dimension-by-dimension reconstructions.
//
// Input is a centered window of cell means (unit cell width, undivided
// moments); output are the Legendre moment coefficients of the reconstruction
// in the center cell. JS-type smoothness indicators with epsilon = 1e-12;
// central linear weight 100 at order 3, balanced stencils at order 4.

#ifndef CURLMESH_WENO_HPP_
#define CURLMESH_WENO_HPP_

#include <cstddef>

#include "curlmesh/basis.hpp"

namespace curlmesh::weno {

struct Moments1D {
  double d1 = 0, d2 = 0, d3 = 0;
};

//! stencil half-width required by `order`
constexpr int radius(int order) { return order <= 2 ? 1 : 2; }

//! nonlinear (limited) moments of the center cell; u points at the center
//! value, u[-r*stride .. r*stride] must be valid
Moments1D moments(int order, const double* u, std::ptrdiff_t stride = 1);

//! linear-weight (unlimited) variant for smooth-data studies
Moments1D moments_linear(int order, const double* u, std::ptrdiff_t stride = 1);

// ---------------------------------------------------------------------------
// modal containers: tensor Legendre coefficients with total degree <= 3

struct Modal2 {
  // index map for (i,j), i+j<=3
  static constexpr int kN = 10;
  static constexpr int I[kN] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
  static constexpr int J[kN] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};
  double c[kN] = {};

  double value(double x, double y) const {
    double s = 0;
    for (int m = 0; m < kN; ++m) s += c[m] * leg(I[m], x) * leg(J[m], y);
    return s;
  }
  //! mean along x in [xa,xb] at fixed y
  double line_mean_x(double xa, double xb, double y) const {
    double s = 0;
    for (int m = 0; m < kN; ++m) s += c[m] * leg_mean(I[m], xa, xb) * leg(J[m], y);
    return s;
  }
  double line_mean_y(double ya, double yb, double x) const {
    double s = 0;
    for (int m = 0; m < kN; ++m) s += c[m] * leg(I[m], x) * leg_mean(J[m], ya, yb);
    return s;
  }
};

struct Modal3 {
  static constexpr int kN = 20;
  static constexpr int I[kN] = {0, 1, 0, 0, 2, 1, 1, 0, 0, 0,
                                3, 2, 2, 1, 1, 1, 0, 0, 0, 0};
  static constexpr int J[kN] = {0, 0, 1, 0, 0, 1, 0, 2, 1, 0,
                                0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
  static constexpr int K[kN] = {0, 0, 0, 1, 0, 0, 1, 0, 1, 2,
                                0, 0, 1, 0, 1, 2, 0, 1, 2, 3};
  double c[kN] = {};

  double value(double x, double y, double z) const {
    double s = 0;
    for (int m = 0; m < kN; ++m)
      s += c[m] * leg(I[m], x) * leg(J[m], y) * leg(K[m], z);
    return s;
  }
  //! mean along `axis` over [a,b], other reference coordinates fixed
  double line_mean(int axis, double a, double b, double u, double v) const {
    // (u,v) are the remaining coordinates in cyclic order after `axis`
    double s = 0;
    for (int m = 0; m < kN; ++m) {
      const int n[3] = {I[m], J[m], K[m]};
      const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
      s += c[m] * leg_mean(n[axis], a, b) * leg(n[a1], u) * leg(n[a2], v);
    }
    return s;
  }
};

}  // namespace curlmesh::weno

#endif  // CURLMESH_WENO_HPP_
