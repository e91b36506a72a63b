//! \file scheme.hpp
//  \brief first-order multidimensionally-upwinded, globally curl-free update
//         schemes for constant-velocity advection of an edge-collocated
//         vector field (2D and 3D), plus the Fourier-symbol stability scan.
//
// The update differences a single vertex-collocated potential
// phi = v.J (locally Lax-Friedrichs upwinded) into every abutting edge, so
// each face circulation changes by a telescoping sum that cancels exactly.

#ifndef CURLMESH_SCHEME_HPP_
#define CURLMESH_SCHEME_HPP_

#include <array>
#include <complex>
#include <vector>

namespace curlmesh::scheme {

struct AdvectionConfig {
  double vx = 0, vy = 0, vz = 0;
  double cfl = 0.45;
  double dx = 1, dy = 1, dz = 1;  // periodic mesh spacings
  //! largest stable forward-Euler step for the per-axis CFL definition
  double dt_bound() const;
};

//! periodic edge state: jx[i + nx*j] at x-edge (i,j), jy likewise
struct EdgeState2D {
  int nx = 0, ny = 0;
  std::vector<double> jx, jy;
  EdgeState2D(int nx_, int ny_)
      : nx(nx_), ny(ny_), jx(size_t(nx_) * ny_), jy(size_t(nx_) * ny_) {}
  size_t idx(int i, int j) const {
    const int ii = ((i % nx) + nx) % nx, jj = ((j % ny) + ny) % ny;
    return size_t(ii) + size_t(nx) * jj;
  }
  double& x(int i, int j) { return jx[idx(i, j)]; }
  double& y(int i, int j) { return jy[idx(i, j)]; }
  double x(int i, int j) const { return jx[idx(i, j)]; }
  double y(int i, int j) const { return jy[idx(i, j)]; }
  //! max |face circulation| (unweighted signed edge sum)
  double max_circulation() const;
};

struct EdgeState3D {
  int n = 0;
  std::vector<double> jx, jy, jz;
  explicit EdgeState3D(int n_)
      : n(n_), jx(size_t(n_) * n_ * n_), jy(jx.size()), jz(jx.size()) {}
  size_t idx(int i, int j, int k) const {
    auto w = [&](int v) { return size_t(((v % n) + n) % n); };
    return w(i) + size_t(n) * (w(j) + size_t(n) * w(k));
  }
  double& x(int i, int j, int k) { return jx[idx(i, j, k)]; }
  double& y(int i, int j, int k) { return jy[idx(i, j, k)]; }
  double& z(int i, int j, int k) { return jz[idx(i, j, k)]; }
  double x(int i, int j, int k) const { return jx[idx(i, j, k)]; }
  double y(int i, int j, int k) const { return jy[idx(i, j, k)]; }
  double z(int i, int j, int k) const { return jz[idx(i, j, k)]; }
  double max_circulation() const;
};

//! upwinded vertex potential at vertex (i,j): centered v.J average minus
//! |v|-weighted jumps of the four surrounding edge values
double vertex_potential_llf(const EdgeState2D& s, const AdvectionConfig& cfg, int i,
                            int j);

struct StepInfo {
  bool dt_exceeded_bound = false;
};

//! forward-Euler step through the shared vertex potentials
StepInfo step2d(EdgeState2D& s, const AdvectionConfig& cfg, double dt);
//! the transcribed centered+dissipation form of the same update; identical to
//! step2d on curl-free data
StepInfo step2d_transcribed(EdgeState2D& s, const AdvectionConfig& cfg, double dt);

StepInfo step3d(EdgeState3D& s, const AdvectionConfig& cfg, double dt);
StepInfo step3d_transcribed(EdgeState3D& s, const AdvectionConfig& cfg, double dt);

//! one-step amplification matrix on the staggered Fourier mode with wave
//! vector (kx,ky); a rank-one update of the identity whose nontrivial
//! eigenvalue is the scalar upwind symbol
struct Symbol2D {
  std::complex<double> g[2][2];
  std::complex<double> advect_eigenvalue;
  double radius;
};
Symbol2D fourier_symbol(const AdvectionConfig& cfg, double kx, double ky, double dt);

struct ScanRow {
  double v_angle, k_angle;
  int cells_per_wavelength;
  double cfl, radius;
};
//! sweep velocity angles x wave angles x wavelengths at a fixed CFL
std::vector<ScanRow> stability_scan(double cfl, int n_v_angles, int n_k_angles,
                                    const std::vector<int>& wavelengths);

}  // namespace curlmesh::scheme

#endif  // CURLMESH_SCHEME_HPP_
