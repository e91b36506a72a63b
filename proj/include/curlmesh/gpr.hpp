//! \file gpr.hpp
//  \brief finite-volume solver for the model hyperbolic system
//         (density, momentum, curl-free thermal impulse J) with an
//         edge-centered curl-preserving J update, SSP-RK time stepping and
//         the stationary-vortex harness.
//
// Zone-centered conserved variables (rho, rho*vx, rho*vy) are updated by a
// WENO + LLF finite-volume scheme; the edge-centered J components are updated
// by differencing a single multidimensionally-upwinded vertex potential
// chi* ~ v.J, which preserves every face circulation to round-off.

#ifndef CURLMESH_GPR_HPP_
#define CURLMESH_GPR_HPP_

#include <functional>
#include <string>
#include <vector>

namespace curlmesh::gpr {

struct ModelParams {
  double gamma = 2.0;  // pressure constant in p = gamma^2 rho
  double c0 = 2.0;     // impulse coupling speed
  double A = 0.2, R0 = 2.0, sigma = 0.5, rho0 = 2.0;  // vortex shape
  void validate() const;
};

//! quasi-exact radial equilibrium: J_r analytic, rho from an RK4 integration
//! of the radial momentum-balance ODE on a fine table
struct VortexProfile {
  ModelParams par;
  double dr = 0.0;
  std::vector<double> rho_tab;
  double rho(double r) const;      // cubic table interpolation
  double jr(double r) const;       // analytic Gaussian shell
  double potential(double r) const;  // phi with J_r = dphi/dr
  double rmax() const { return dr * (rho_tab.size() - 1); }
  //! max residual of the equilibrium ODE on the table (centered differences)
  double ode_residual() const;
};
VortexProfile stationary_profile(const ModelParams& p, double r_max, int n_radial);

//! pointwise fluxes of the zone-centered subsystem
struct PointState {
  double rho, vx, vy, jx, jy;
};
struct Flux2 {
  double mass[2];      // rho v_i
  double mom[2][2];    // rho v_i v_k + delta_ik p + rho c0^2 J_i J_k
};
Flux2 flux(const PointState& s, const ModelParams& p);

//! Multidimensionally-upwinded vertex potential chi* from the four corner
//! states: centered v.J average minus jump terms weighted by the local max
//! |v| per direction plus the impulse-coupling bound c_impulse (the v-J
//! subsystem carries waves at sqrt(2) c0 |J|; the solver passes that bound,
//! while c_impulse = 0 gives the pure velocity-upwind limit in which chi*
//! vanishes identically for v = 0).
struct VertexStates {
  double vx[4], vy[4];            // quadrant order SW, SE, NW, NE
  double jx_w, jx_e, jy_s, jy_n;  // limited edge traces meeting at the vertex
};
double vertex_riemann_j(const VertexStates& s, double c_impulse = 0.0);

enum class GprBc { Periodic, DirichletExact };

struct FluidState {
  int n = 0;
  double h = 0, x0 = 0, y0 = 0;
  static constexpr int ng = 4;
  std::vector<double> rho, mx, my;  // (n+2ng)^2 zone arrays
  std::vector<double> jx, jy;       // edge arrays with ghost lines

  explicit FluidState(int n_, double h_, double x0_, double y0_);
  int stride_z() const { return n + 2 * ng; }
  size_t zid(int i, int j) const {
    return size_t(i + ng) + size_t(stride_z()) * (j + ng);
  }
  // x-edge (i,j): segment i in [-ng, n+ng-1], line j in [-ng, n+ng]
  size_t xid(int i, int j) const {
    return size_t(i + ng) + size_t(n + 2 * ng) * (j + ng);
  }
  // y-edge (i,j): line i in [-ng, n+ng], segment j in [-ng, n+ng-1]
  size_t yid(int i, int j) const {
    return size_t(i + ng) + size_t(n + 2 * ng + 1) * (j + ng);
  }
};

struct Solver {
  ModelParams par;
  int order = 2;       // 2..4 (order 4 pairs SSP-RK3 with dt ~ h^(4/3))
  double cfl = 0.4;
  bool limited = true;  // WENO edge/zone limiting; false = linear weights
  bool impulse_signal = true;  // include the impulse-coupling bound in chi*
  GprBc bc = GprBc::DirichletExact;
  VortexProfile profile;

  //! stationary vortex on [-5,5]^2 with machine-curl-free edge data
  FluidState init_vortex(int n) const;

  double max_signal(const FluidState& s) const;
  double pick_dt(const FluidState& s) const;
  //! one SSP-RK step; throws std::runtime_error on negative density / NaN
  void step(FluidState& s, double dt) const;
  //! advance to exactly t_end
  void run(FluidState& s, double t_end,
           const std::function<void(double, const FluidState&)>& monitor = {}) const;
};

double energy_total(const FluidState& s);   // mesh-integrated Jx^2 + Jy^2
double mass_total(const FluidState& s);
double max_abs_j(const FluidState& s);
double curl_error(const FluidState& s);     // max |circulation| / zone area

struct ConvRow {
  int order, n;
  double l1, linf;
};
//! vortex runs to t_end; errors of J_x against the quasi-exact edge data
std::vector<ConvRow> convergence_study(const ModelParams& par,
                                       const std::vector<int>& orders,
                                       const std::vector<int>& meshes, double t_end,
                                       bool limited = true);

}  // namespace curlmesh::gpr

#endif  // CURLMESH_GPR_HPP_
