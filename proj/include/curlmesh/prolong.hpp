//! \file prolong.hpp
//  \brief curl-constraint-preserving AMR prolongation (refinement ratio 2):
//         FV-WENO candidate prolongation, fine-edge classification, and the
//         local least-squares touch-up that restores the discrete circulation
//         on the fine mesh.
//
// The coarse field lives on a periodic n^3 unit-cube mesh, one scalar per
// edge (the component along the edge axis). Fine edges split into
//   type 1: coincident with coarse edges      (never modified by touch-up)
//   type 2: interior to a coarse face         (4 per face)
//   type 3: interior to a coarse zone         (6 per zone)

#ifndef CURLMESH_PROLONG_HPP_
#define CURLMESH_PROLONG_HPP_

#include <array>
#include <functional>
#include <vector>

namespace curlmesh::prolong {

//! edge-centered scalar per axis on a periodic n^3 mesh.
//! x-edge (i,j,k) spans [i,i+1]*h along x at the (j,k) transverse vertex line.
struct EdgeField3 {
  int n = 0;
  std::vector<double> x, y, z;

  explicit EdgeField3(int n_ = 0)
      : n(n_), x(size_t(n_) * n_ * n_), y(x.size()), z(x.size()) {}
  int wrap(int i) const {
    int m = i % n;
    return m < 0 ? m + n : m;
  }
  size_t idx(int i, int j, int k) const {
    return size_t(wrap(i)) + size_t(n) * (wrap(j) + size_t(n) * wrap(k));
  }
  double& ex(int i, int j, int k) { return x[idx(i, j, k)]; }
  double& ey(int i, int j, int k) { return y[idx(i, j, k)]; }
  double& ez(int i, int j, int k) { return z[idx(i, j, k)]; }
  double ex(int i, int j, int k) const { return x[idx(i, j, k)]; }
  double ey(int i, int j, int k) const { return y[idx(i, j, k)]; }
  double ez(int i, int j, int k) const { return z[idx(i, j, k)]; }
};

using CoarseField = EdgeField3;
using Potential = std::function<double(double, double, double)>;

//! the trigonometric vertex potential driving the prolongation harness
double harness_potential(double x, double y, double z);

//! difference a vertex potential along every edge; the result is exactly
//! circulation-free on every face
CoarseField init_gradient_field(int n, const Potential& phi = harness_potential);

//! max over all faces of the unweighted signed edge sum
double max_circulation(const EdgeField3& f);

enum class ProlongMode { Naive, TouchUp, ExactRecon };

//! prolong to the 2n mesh at the given order (2..4; ExactRecon supports 2..3)
EdgeField3 prolong_field(const CoarseField& coarse, int order, ProlongMode mode);

// ---------------------------------------------------------------------------
// local touch-up building blocks (unit-square / unit-cube data)

//! 2D inputs: type-1 boundary halves of one coarse face quad, FV candidates
//! for the 4 interior fine edges, and the fine-zone circulation targets
//! (zones 1=BL, 2=BR, 3=TL; zone 4 is dependent).
struct TouchUp2D {
  double xb1 = 0, xb2 = 0, xt1 = 0, xt2 = 0;  // x-edge halves: bottom, top
  double yl1 = 0, yl2 = 0, yr1 = 0, yr2 = 0;  // y-edge halves: left, right
  double fxc1 = 0, fxc2 = 0, fyc1 = 0, fyc2 = 0;
  double rz1 = 0, rz2 = 0, rz3 = 0;
};
struct TouchUp2DResult {
  double xc1, xc2, yc1, yc2;
  double alpha;  // interior-shift parameter at the least-squares optimum
};
TouchUp2DResult touchup2d(const TouchUp2D& t);

//! 3D inputs: the 24 type-2 values around one coarse zone (already produced
//! by the per-face 2D step), the 6 FV candidates for the interior edges, and
//! the 5 independently specifiable internal-face circulation targets in the
//! documented order {z:(-,-), z:(+,-), x:(-,+), x:(+,+), y:(-,+)}, quadrant
//! (s1,s2) over the plane's cyclic tangent axes. The remaining 7 are implied.
struct TouchUp3D {
  // x-edges interior to the y-/z-faces, halves along x
  std::array<double, 2> xf_ym{}, xf_yp{}, xf_zm{}, xf_zp{};
  // y-edges interior to the z-/x-faces, halves along y
  std::array<double, 2> yf_zm{}, yf_zp{}, yf_xm{}, yf_xp{};
  // z-edges interior to the x-/y-faces, halves along z
  std::array<double, 2> zf_xm{}, zf_xp{}, zf_ym{}, zf_yp{};
  std::array<double, 6> cand{};     // FV candidates xc1,xc2,yc1,yc2,zc1,zc2
  std::array<double, 5> targets{};  // independent circulation targets
};
struct TouchUp3DResult {
  std::array<double, 6> v;           // xc1,xc2,yc1,yc2,zc1,zc2
  double beta;                       // kernel coordinate at the optimum
  std::array<double, 12> achieved;   // all internal-face circulations
};
TouchUp3DResult touchup3d(const TouchUp3D& t);

//! circulations of the 12 internal fine faces for given interior values,
//! ordered z:(-,-),(+,-),(-,+),(+,+), x:(same), y:(same)
std::array<double, 12> internal_circulations(const TouchUp3D& t,
                                             const std::array<double, 6>& v);

//! validate a full 12-target prescription against the dependency structure;
//! throws std::invalid_argument when inconsistent. Returns the free 5.
std::array<double, 5> reduce_targets(const TouchUp3D& t,
                                     const std::array<double, 12>& full,
                                     double tol = 1e-11);

}  // namespace curlmesh::prolong

#endif  // CURLMESH_PROLONG_HPP_
