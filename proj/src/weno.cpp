#include "curlmesh/weno.hpp"

#include <cmath>
#include <stdexcept>

namespace curlmesh::weno {

namespace {

constexpr double kEps = 1e-12;

// quadratic candidate (a1,a2) over cells {o, o+1, o+2} relative to center 0
struct Quad {
  double a1, a2;
};

inline double sq(double v) { return v * v; }

// cubic candidate over 4 cells; dm2=u[-2]-u0 etc. (only the needed ones used)
struct Cubic {
  double a1, a2, a3;
};

inline Cubic cubic_left(double dm2, double dm1, double dp1) {
  Cubic c;
  c.a2 = 0.5 * (dp1 + dm1);
  c.a3 = (dp1 + 3.0 * dm1 - dm2) / 6.0;
  c.a1 = 0.5 * (dp1 - dm1) - 1.1 * c.a3;
  return c;
}

inline Cubic cubic_right(double dm1, double dp1, double dp2) {
  Cubic c;
  c.a2 = 0.5 * (dp1 + dm1);
  c.a3 = (dp2 - 3.0 * dp1 - dm1) / 6.0;
  c.a1 = 0.5 * (dp1 - dm1) - 1.1 * c.a3;
  return c;
}

inline double beta_quad(const Quad& q) { return sq(q.a1) + 13.0 / 3.0 * sq(q.a2); }

inline double beta_cubic(const Cubic& c) {
  return sq(c.a1) + 0.2 * c.a1 * c.a3 + 13.0 / 3.0 * sq(c.a2) + 39.06 * sq(c.a3);
}

Moments1D blend(int order, const double* u, std::ptrdiff_t s, bool limited) {
  // Z-type weights: alpha_k = gamma_k (1 + tau/(beta_k + eps)) with tau the
  // spread of the smoothness indicators. On smooth data (critical points
  // included) the weights approach the linear ones fast enough that the
  // dissipation they feed stays at design order.
  Moments1D m;
  const double u0 = u[0];
  if (order == 2) {
    // one-sided candidates plus a dominant central one, as at order 3
    const double sl = u0 - u[-s];
    const double sr = u[s] - u0;
    const double sc = 0.5 * (sl + sr);
    double wl = 1.0, wc = 100.0, wr = 1.0;
    if (limited) {
      const double bl = sq(sl), bc = sq(sc), br = sq(sr);
      const double tau = std::abs(bl - br);
      wl *= 1.0 + tau / (bl + kEps);
      wc *= 1.0 + tau / (bc + kEps);
      wr *= 1.0 + tau / (br + kEps);
    }
    m.d1 = (wl * sl + wc * sc + wr * sr) / (wl + wc + wr);
    return m;
  }
  if (order == 3) {
    const double um2 = u[-2 * s], um1 = u[-s], up1 = u[s], up2 = u[2 * s];
    const Quad qL{0.5 * (um2 - 4.0 * um1 + 3.0 * u0), 0.5 * (um2 - 2.0 * um1 + u0)};
    const Quad qC{0.5 * (up1 - um1), 0.5 * (up1 - 2.0 * u0 + um1)};
    const Quad qR{0.5 * (-3.0 * u0 + 4.0 * up1 - up2), 0.5 * (u0 - 2.0 * up1 + up2)};
    double wL = 1.0, wC = 100.0, wR = 1.0;
    if (limited) {
      const double bL = beta_quad(qL), bC = beta_quad(qC), bR = beta_quad(qR);
      const double tau = std::abs(bL - bR);
      wL *= 1.0 + tau / (bL + kEps);
      wC *= 1.0 + tau / (bC + kEps);
      wR *= 1.0 + tau / (bR + kEps);
    }
    const double wsum = wL + wC + wR;
    m.d1 = (wL * qL.a1 + wC * qC.a1 + wR * qR.a1) / wsum;
    m.d2 = (wL * qL.a2 + wC * qC.a2 + wR * qR.a2) / wsum;
    return m;
  }
  if (order == 4) {
    const double dm2 = u[-2 * s] - u0, dm1 = u[-s] - u0;
    const double dp1 = u[s] - u0, dp2 = u[2 * s] - u0;
    const Cubic cL = cubic_left(dm2, dm1, dp1);
    const Cubic cR = cubic_right(dm1, dp1, dp2);
    double wL = 1.0, wR = 1.0;
    if (limited) {
      const double bL = beta_cubic(cL), bR = beta_cubic(cR);
      const double tau = std::abs(bL - bR);
      wL *= 1.0 + tau / (bL + kEps);
      wR *= 1.0 + tau / (bR + kEps);
    }
    const double wsum = wL + wR;
    m.d1 = (wL * cL.a1 + wR * cR.a1) / wsum;
    m.d2 = (wL * cL.a2 + wR * cR.a2) / wsum;
    m.d3 = (wL * cL.a3 + wR * cR.a3) / wsum;
    return m;
  }
  throw std::invalid_argument("weno: order must be 2..4");
}

}  // namespace

Moments1D moments(int order, const double* u, std::ptrdiff_t stride) {
  return blend(order, u, stride, true);
}

Moments1D moments_linear(int order, const double* u, std::ptrdiff_t stride) {
  return blend(order, u, stride, false);
}

}  // namespace curlmesh::weno
