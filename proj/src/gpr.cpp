#include "curlmesh/gpr.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "curlmesh/basis.hpp"
#include "curlmesh/parallel.hpp"
#include "curlmesh/recon2d.hpp"
#include "curlmesh/weno.hpp"

namespace curlmesh::gpr {

using recon2d::CurlMoments2D;
using recon2d::Edge1D;
using recon2d::EdgeMoments2D;
using recon2d::Recon2D;
using weno::Moments1D;

void ModelParams::validate() const {
  if (!(gamma > 0 && c0 > 0 && sigma > 0 && rho0 > 0))
    throw std::invalid_argument("gpr: parameters must be positive");
}

// ---------------------------------------------------------------------------
// stationary vortex profile

double VortexProfile::jr(double r) const {
  const double q = (r - par.R0) / par.sigma;
  return 2.0 * par.A / (std::sqrt(M_PI) * par.sigma) * std::exp(-q * q);
}

double VortexProfile::potential(double r) const {
  return par.A * std::erf((r - par.R0) / par.sigma);
}

double VortexProfile::rho(double r) const {
  const size_t m = rho_tab.size();
  double s = r / dr;
  if (s <= 1.0) s = 1.0;                       // inner guard cell for the cubic
  if (s >= double(m - 3)) return rho_tab[m - 1];  // flat exterior tail
  const size_t i = size_t(s);
  const double t = s - double(i);
  const double f0 = rho_tab[i - 1], f1 = rho_tab[i], f2 = rho_tab[i + 1],
               f3 = rho_tab[i + 2];
  // 4-point Lagrange on the uniform table
  return f1 + 0.5 * t * (f2 - f0 + t * (2 * f0 - 5 * f1 + 4 * f2 - f3 +
                                        t * (3 * (f1 - f2) + f3 - f0)));
}

VortexProfile stationary_profile(const ModelParams& p, double r_max, int n_radial) {
  p.validate();
  if (n_radial < 10000)
    throw std::invalid_argument("stationary_profile: table too coarse");
  VortexProfile v;
  v.par = p;
  v.dr = r_max / n_radial;
  v.rho_tab.resize(n_radial + 1);
  v.rho_tab[0] = p.rho0;
  const double c2 = p.c0 * p.c0, g2 = p.gamma * p.gamma;
  auto slope = [&](double r, double rho) {
    if (r <= 0.0) return 0.0;
    const double J = v.jr(r);
    const double dJ = -2.0 * (r - p.R0) / (p.sigma * p.sigma) * J;
    return -rho * J * c2 / (g2 + J * J * c2) * (2.0 * dJ + J / r);
  };
  double rho = p.rho0;
  for (int i = 0; i < n_radial; ++i) {
    const double r = i * v.dr;
    const double k1 = slope(r, rho);
    const double k2 = slope(r + 0.5 * v.dr, rho + 0.5 * v.dr * k1);
    const double k3 = slope(r + 0.5 * v.dr, rho + 0.5 * v.dr * k2);
    const double k4 = slope(r + v.dr, rho + v.dr * k3);
    rho += v.dr / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (!(rho > 0.0))
      throw std::invalid_argument("stationary_profile: density became non-positive");
    v.rho_tab[i + 1] = rho;
  }
  return v;
}

double VortexProfile::ode_residual() const {
  const double c2 = par.c0 * par.c0, g2 = par.gamma * par.gamma;
  double worst = 0.0;
  for (size_t i = 2; i + 2 < rho_tab.size(); ++i) {
    const double r = i * dr;
    // 4th-order centered difference keeps the check below the RK4 error
    const double drho = (8.0 * (rho_tab[i + 1] - rho_tab[i - 1]) -
                         (rho_tab[i + 2] - rho_tab[i - 2])) /
                        (12.0 * dr);
    const double J = jr(r);
    const double dJ = -2.0 * (r - par.R0) / (par.sigma * par.sigma) * J;
    const double rhs = -rho_tab[i] * J * c2 / (g2 + J * J * c2) * (2 * dJ + J / r);
    worst = std::max(worst, std::abs(drho - rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// pointwise operators

Flux2 flux(const PointState& s, const ModelParams& p) {
  if (!(s.rho > 0.0)) throw std::domain_error("flux: non-positive density");
  const double pr = p.gamma * p.gamma * s.rho;
  const double cj = s.rho * p.c0 * p.c0;
  const double v[2] = {s.vx, s.vy}, J[2] = {s.jx, s.jy};
  Flux2 f;
  for (int i = 0; i < 2; ++i) {
    f.mass[i] = s.rho * v[i];
    for (int k = 0; k < 2; ++k)
      f.mom[i][k] = s.rho * v[i] * v[k] + (i == k ? pr : 0.0) + cj * J[i] * J[k];
  }
  return f;
}

double vertex_riemann_j(const VertexStates& s, double c_impulse) {
  double sx = c_impulse, sy = c_impulse, avg = 0;
  const double jxq[4] = {s.jx_w, s.jx_e, s.jx_w, s.jx_e};  // SW,SE,NW,NE
  const double jyq[4] = {s.jy_s, s.jy_s, s.jy_n, s.jy_n};
  for (int q = 0; q < 4; ++q) {
    sx = std::max(sx, c_impulse + std::abs(s.vx[q]));
    sy = std::max(sy, c_impulse + std::abs(s.vy[q]));
    avg += s.vx[q] * jxq[q] + s.vy[q] * jyq[q];
  }
  return 0.25 * avg - 0.5 * sx * (s.jx_e - s.jx_w) - 0.5 * sy * (s.jy_n - s.jy_s);
}

// ---------------------------------------------------------------------------
// state

FluidState::FluidState(int n_, double h_, double x0_, double y0_)
    : n(n_), h(h_), x0(x0_), y0(y0_) {
  const size_t sz = size_t(n + 2 * ng) * (n + 2 * ng);
  rho.assign(sz, 0.0);
  mx.assign(sz, 0.0);
  my.assign(sz, 0.0);
  jx.assign(size_t(n + 2 * ng) * (n + 2 * ng + 1), 0.0);
  jy.assign(size_t(n + 2 * ng + 1) * (n + 2 * ng), 0.0);
}

namespace {

constexpr int NG = FluidState::ng;

using weno::Modal2;

inline double edge_val(const Moments1D& m, double avg, double t) {
  return avg + m.d1 * t + m.d2 * leg(2, t) + m.d3 * leg(3, t);
}

}  // namespace

FluidState Solver::init_vortex(int n) const {
  if (profile.dr <= 0.0)
    throw std::logic_error("gpr: solver profile not initialized");
  FluidState s(n, 10.0 / n, -5.0, -5.0);
  const double h = s.h;
  // zone means of rho by 3x3 Gauss, all zones incl. ghosts; v = 0
  for (int j = -NG; j < n + NG; ++j)
    for (int i = -NG; i < n + NG; ++i) {
      const double xc = s.x0 + (i + 0.5) * h, yc = s.y0 + (j + 0.5) * h;
      double acc = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double x = xc + h * Gauss<3>::x[a], y = yc + h * Gauss<3>::x[b];
          acc += Gauss<3>::w[a] * Gauss<3>::w[b] * profile.rho(std::hypot(x, y));
        }
      s.rho[s.zid(i, j)] = acc;
    }
  // edge means of J from vertex potential differences: exactly curl-free
  auto pot = [&](double x, double y) { return profile.potential(std::hypot(x, y)); };
  for (int j = -NG; j <= n + NG; ++j)
    for (int i = -NG; i < n + NG; ++i) {
      const double x = s.x0 + i * h, y = s.y0 + j * h;
      s.jx[s.xid(i, j)] = (pot(x + h, y) - pot(x, y)) / h;
    }
  for (int j = -NG; j < n + NG; ++j)
    for (int i = -NG; i <= n + NG; ++i) {
      const double x = s.x0 + i * h, y = s.y0 + j * h;
      s.jy[s.yid(i, j)] = (pot(x, y + h) - pot(x, y)) / h;
    }
  return s;
}

namespace {

// wrap-copy ghost entries for periodic runs
void fill_periodic(FluidState& s) {
  const int n = s.n;
  auto wz = [&](int v) { return ((v % n) + n) % n; };
  for (int j = -NG; j < n + NG; ++j)
    for (int i = -NG; i < n + NG; ++i) {
      if (i >= 0 && i < n && j >= 0 && j < n) continue;
      const size_t d = s.zid(i, j), src = s.zid(wz(i), wz(j));
      s.rho[d] = s.rho[src];
      s.mx[d] = s.mx[src];
      s.my[d] = s.my[src];
    }
  for (int j = -NG; j <= n + NG; ++j)
    for (int i = -NG; i < n + NG; ++i) {
      if (i >= 0 && i < n && j >= 0 && j < n) continue;
      s.jx[s.xid(i, j)] = s.jx[s.xid(wz(i), wz(j))];
    }
  for (int j = -NG; j < n + NG; ++j)
    for (int i = -NG; i <= n + NG; ++i) {
      if (i >= 0 && i < n && j >= 0 && j < n) continue;
      s.jy[s.yid(i, j)] = s.jy[s.yid(wz(i), wz(j))];
    }
}

struct Workspace {
  int n = 0, order = 2;
  // zone modal reconstructions on [-1..n]^2
  std::vector<Modal2> mrho, mmx, mmy;
  // edge moments: jx on i in [-2..n+1], j in [-2..n+2]; jy transposed
  std::vector<Moments1D> mjx, mjy;
  // per-zone J reconstruction on [-1..n]^2
  std::vector<Recon2D> jrec;
  size_t zrid(int i, int j) const { return size_t(i + 1) + size_t(n + 2) * (j + 1); }
  size_t mxid(int i, int j) const { return size_t(i + 2) + size_t(n + 4) * (j + 2); }
  size_t myid(int i, int j) const { return size_t(i + 2) + size_t(n + 5) * (j + 2); }
};

// dimension-by-dimension modal WENO of one zone field over [-1..n]^2
void build_modal2(const FluidState& s, const std::vector<double>& f, int order,
                  bool limited, std::vector<Modal2>& out, const Workspace& w) {
  const int n = s.n;
  const int r = weno::radius(order);
  auto mom = [&](const double* c, std::ptrdiff_t st, int ord) {
    return limited ? weno::moments(ord, c, st) : weno::moments_linear(ord, c, st);
  };
  // x-moments on the extended row range needed by the y pass
  const int jlo = -1 - r, jhi = n + r;
  std::vector<double> c10((n + 2) * (jhi - jlo + 1)), c20(c10.size()), c30(c10.size());
  auto xrid = [&](int i, int j) { return size_t(i + 1) + size_t(n + 2) * (j - jlo); };
  par_for(std::int64_t(jhi - jlo + 1) * (n + 2), [&](std::int64_t t) {
    const int i = int(t % (n + 2)) - 1, j = int(t / (n + 2)) + jlo;
    const auto m = mom(&f[s.zid(i, j)], 1, order);
    c10[xrid(i, j)] = m.d1;
    c20[xrid(i, j)] = m.d2;
    c30[xrid(i, j)] = m.d3;
  });
  const int sz = s.stride_z();
  par_for(std::int64_t(n + 2) * (n + 2), [&](std::int64_t t) {
    const int i = int(t % (n + 2)) - 1, j = int(t / (n + 2)) - 1;
    Modal2& md = out[w.zrid(i, j)];
    md = Modal2{};
    const auto my_ = mom(&f[s.zid(i, j)], sz, order);
    md.c[0] = f[s.zid(i, j)];
    md.c[1] = c10[xrid(i, j)];
    md.c[2] = my_.d1;
    md.c[3] = c20[xrid(i, j)];
    md.c[5] = my_.d2;
    md.c[6] = c30[xrid(i, j)];
    md.c[9] = my_.d3;
    if (order >= 3) {
      double wx[5];
      for (int o = -r; o <= r; ++o) wx[o + r] = c10[xrid(i, j + o)];
      const auto mxy = mom(wx + r, 1, order - 1);
      md.c[4] = mxy.d1;  // xy
      md.c[7] = mxy.d2;  // xyy
      if (order >= 4) {
        for (int o = -r; o <= r; ++o) wx[o + r] = c20[xrid(i, j + o)];
        md.c[8] = mom(wx + r, 1, 2).d1;  // xxy
      }
    }
  });
}

}  // namespace

double Solver::max_signal(const FluidState& s) const {
  const double c2 = par.c0 * par.c0, g2 = par.gamma * par.gamma;
  double m = 0.0;
  for (int j = 0; j < s.n; ++j)
    for (int i = 0; i < s.n; ++i) {
      const double rho = s.rho[s.zid(i, j)];
      const double vx = s.mx[s.zid(i, j)] / rho, vy = s.my[s.zid(i, j)] / rho;
      const double jxz = 0.5 * (s.jx[s.xid(i, j)] + s.jx[s.xid(i, j + 1)]);
      const double jyz = 0.5 * (s.jy[s.yid(i, j)] + s.jy[s.yid(i + 1, j)]);
      const double sig = std::abs(vx) + std::abs(vy) +
                         std::sqrt(g2 + c2 * (jxz * jxz + jyz * jyz));
      m = std::max(m, sig);
    }
  return m;
}

double Solver::pick_dt(const FluidState& s) const {
  double dt = cfl * s.h / max_signal(s);
  if (order >= 4) dt *= std::cbrt(s.h / 10.0);
  return dt;
}

namespace {

struct Rhs {
  std::vector<double> rho, mx, my, jx, jy;
};

void compute_rhs(const Solver& sv, const FluidState& s, Rhs& out) {
  const int n = s.n;
  const double h = s.h;
  const int qn = 2;  // 2-point Gauss faces at every order
  Workspace w;
  w.n = n;
  w.order = sv.order;
  w.mrho.resize((n + 2) * (n + 2));
  w.mmx.resize(w.mrho.size());
  w.mmy.resize(w.mrho.size());
  const bool lim_zone = sv.limited && !std::getenv("CM_LIN_ZONE");
  const bool lim_edge = sv.limited && !std::getenv("CM_LIN_EDGE");
  build_modal2(s, s.rho, sv.order, lim_zone, w.mrho, w);
  build_modal2(s, s.mx, sv.order, lim_zone, w.mmx, w);
  build_modal2(s, s.my, sv.order, lim_zone, w.mmy, w);

  // per-edge 1D moments of J along the edge axis
  w.mjx.resize(size_t(n + 4) * (n + 5));
  w.mjy.resize(size_t(n + 5) * (n + 4));
  const int eord = sv.order;
  auto emom = [&](const double* c, std::ptrdiff_t st) {
    return lim_edge ? weno::moments(eord, c, st) : weno::moments_linear(eord, c, st);
  };
  par_for(std::int64_t(n + 5) * (n + 4), [&](std::int64_t t) {
    const int i = int(t % (n + 4)) - 2, j = int(t / (n + 4)) - 2;  // j in [-2..n+2]
    w.mjx[w.mxid(i, j)] = emom(&s.jx[s.xid(i, j)], 1);
  });
  par_for(std::int64_t(n + 4) * (n + 5), [&](std::int64_t t) {
    const int i = int(t % (n + 5)) - 2, j = int(t / (n + 5)) - 2;  // i in [-2..n+2]
    w.mjy[w.myid(i, j)] = emom(&s.jy[s.yid(i, j)], int(n + 2 * NG + 1));
  });

  // per-zone curl-free J reconstruction (order-4 zone modes from 2.19 averages)
  std::vector<double> avjx, avjy;
  if (sv.order >= 4) {
    avjx.resize(size_t(n + 4) * (n + 4));
    avjy.resize(avjx.size());
    auto aid = [&](int i, int j) { return size_t(i + 2) + size_t(n + 4) * (j + 2); };
    par_for(std::int64_t(n + 4) * (n + 4), [&](std::int64_t t) {
      const int i = int(t % (n + 4)) - 2, j = int(t / (n + 4)) - 2;
      EdgeMoments2D em;
      em.xb.avg = s.jx[s.xid(i, j)];
      em.xt.avg = s.jx[s.xid(i, j + 1)];
      em.yl.avg = s.jy[s.yid(i, j)];
      em.yr.avg = s.jy[s.yid(i + 1, j)];
      em.yl.d1 = w.mjy[w.myid(i, j)].d1;
      em.yr.d1 = w.mjy[w.myid(i + 1, j)].d1;
      em.xb.d1 = w.mjx[w.mxid(i, j)].d1;
      em.xt.d1 = w.mjx[w.mxid(i, j + 1)].d1;
      const auto av = recon2d::zone_average2d(em, {});
      avjx[aid(i, j)] = av.first;
      avjy[aid(i, j)] = av.second;
    });
    w.jrec.resize((n + 2) * (n + 2));
    par_for(std::int64_t(n + 2) * (n + 2), [&](std::int64_t t) {
      const int i = int(t % (n + 2)) - 1, j = int(t / (n + 2)) - 1;
      double ax[9], ay[9];
      for (int b = -1; b <= 1; ++b)
        for (int a = -1; a <= 1; ++a) {
          ax[(b + 1) * 3 + (a + 1)] = avjx[aid(i + a, j + b)];
          ay[(b + 1) * 3 + (a + 1)] = avjy[aid(i + a, j + b)];
        }
      const auto zm = recon2d::zone_modes_from_averages(ax, ay);
      EdgeMoments2D em;
      auto fill = [&](Edge1D& e, const Moments1D& m, double avg) {
        e.avg = avg;
        e.d1 = m.d1;
        e.d2 = m.d2;
        e.d3 = m.d3;
      };
      fill(em.xb, w.mjx[w.mxid(i, j)], s.jx[s.xid(i, j)]);
      fill(em.xt, w.mjx[w.mxid(i, j + 1)], s.jx[s.xid(i, j + 1)]);
      fill(em.yl, w.mjy[w.myid(i, j)], s.jy[s.yid(i, j)]);
      fill(em.yr, w.mjy[w.myid(i + 1, j)], s.jy[s.yid(i + 1, j)]);
      w.jrec[w.zrid(i, j)] = recon2d::reconstruct2d(4, em, {}, zm);
    });
  } else {
    w.jrec.resize((n + 2) * (n + 2));
    par_for(std::int64_t(n + 2) * (n + 2), [&](std::int64_t t) {
      const int i = int(t % (n + 2)) - 1, j = int(t / (n + 2)) - 1;
      EdgeMoments2D em;
      auto fill = [&](Edge1D& e, const Moments1D& m, double avg) {
        e.avg = avg;
        e.d1 = m.d1;
        if (sv.order >= 3) e.d2 = m.d2;
      };
      fill(em.xb, w.mjx[w.mxid(i, j)], s.jx[s.xid(i, j)]);
      fill(em.xt, w.mjx[w.mxid(i, j + 1)], s.jx[s.xid(i, j + 1)]);
      fill(em.yl, w.mjy[w.myid(i, j)], s.jy[s.yid(i, j)]);
      fill(em.yr, w.mjy[w.myid(i + 1, j)], s.jy[s.yid(i + 1, j)]);
      w.jrec[w.zrid(i, j)] = recon2d::reconstruct2d(sv.order, em, {});
    });
  }

  // vertex potentials chi* on [0..n]^2  (positivity failures flagged, not
  // thrown, since the loop may run inside an OpenMP region)
  std::atomic<bool> bad{false};
  std::vector<double> chi(size_t(n + 1) * (n + 1));
  par_for(std::int64_t(n + 1) * (n + 1), [&](std::int64_t t) {
    const int i = int(t % (n + 1)), j = int(t / (n + 1));
    VertexStates vs;
    const int zi[4] = {i - 1, i, i - 1, i}, zj[4] = {j - 1, j - 1, j, j};
    const double cx[4] = {0.5, -0.5, 0.5, -0.5}, cy[4] = {0.5, 0.5, -0.5, -0.5};
    for (int q = 0; q < 4; ++q) {
      const size_t id = w.zrid(zi[q], zj[q]);
      const double rho = w.mrho[id].value(cx[q], cy[q]);
      if (!(rho > 0.0)) {
        bad.store(true, std::memory_order_relaxed);
        vs.vx[q] = vs.vy[q] = 0.0;
        continue;
      }
      vs.vx[q] = w.mmx[id].value(cx[q], cy[q]) / rho;
      vs.vy[q] = w.mmy[id].value(cx[q], cy[q]) / rho;
    }
    vs.jx_w = edge_val(w.mjx[w.mxid(i - 1, j)], s.jx[s.xid(i - 1, j)], 0.5);
    vs.jx_e = edge_val(w.mjx[w.mxid(i, j)], s.jx[s.xid(i, j)], -0.5);
    vs.jy_s = edge_val(w.mjy[w.myid(i, j - 1)], s.jy[s.yid(i, j - 1)], 0.5);
    vs.jy_n = edge_val(w.mjy[w.myid(i, j)], s.jy[s.yid(i, j)], -0.5);
    const double jmag =
        std::sqrt(std::max(vs.jx_w * vs.jx_w, vs.jx_e * vs.jx_e) +
                  std::max(vs.jy_s * vs.jy_s, vs.jy_n * vs.jy_n));
    chi[t] = vertex_riemann_j(vs, sv.impulse_signal ? std::sqrt(2.0) * sv.par.c0 * jmag : 0.0);
  });
  if (bad.load()) throw std::runtime_error("gpr: non-positive corner density");

  // J updates: difference the shared vertex potential along each edge
  auto chi_at = [&](int i, int j) { return chi[size_t(i) + size_t(n + 1) * j]; };
  par_for(std::int64_t(n) * (n + 1), [&](std::int64_t t) {
    const int i = int(t % n), j = int(t / n);  // x-edges, lines j in [0..n]
    out.jx[s.xid(i, j)] = -(chi_at(i + 1, j) - chi_at(i, j)) / h;
  });
  par_for(std::int64_t(n + 1) * n, [&](std::int64_t t) {
    const int i = int(t % (n + 1)), j = int(t / (n + 1));  // y-edges
    out.jy[s.yid(i, j)] = -(chi_at(i, j + 1) - chi_at(i, j)) / h;
  });

  // zone fluxes with LLF at face quadrature points
  const double c2 = sv.par.c0 * sv.par.c0, g2 = sv.par.gamma * sv.par.gamma;
  auto point_state = [&](int zi, int zj, double rx, double ry) {
    const size_t id = w.zrid(zi, zj);
    PointState p;
    p.rho = w.mrho[id].value(rx, ry);
    if (!(p.rho > 0.0)) {
      bad.store(true, std::memory_order_relaxed);
      p.rho = 1.0;
    }
    p.vx = w.mmx[id].value(rx, ry) / p.rho;
    p.vy = w.mmy[id].value(rx, ry) / p.rho;
    const auto jv = w.jrec[id].eval(rx, ry);
    p.jx = jv.first;
    p.jy = jv.second;
    return p;
  };
  auto llf = [&](const PointState& L, const PointState& R, int nrm, double* f) {
    const double vnL = nrm == 0 ? L.vx : L.vy, vnR = nrm == 0 ? R.vx : R.vy;
    const double sL = std::abs(vnL) + std::sqrt(g2 + c2 * (L.jx * L.jx + L.jy * L.jy));
    const double sR = std::abs(vnR) + std::sqrt(g2 + c2 * (R.jx * R.jx + R.jy * R.jy));
    const double sm = std::max(sL, sR);
    const Flux2 FL = flux(L, sv.par), FR = flux(R, sv.par);
    const double UL[3] = {L.rho, L.rho * L.vx, L.rho * L.vy};
    const double UR[3] = {R.rho, R.rho * R.vx, R.rho * R.vy};
    const double FLv[3] = {FL.mass[nrm], FL.mom[nrm][0], FL.mom[nrm][1]};
    const double FRv[3] = {FR.mass[nrm], FR.mom[nrm][0], FR.mom[nrm][1]};
    for (int c = 0; c < 3; ++c)
      f[c] = 0.5 * (FLv[c] + FRv[c]) - 0.5 * sm * (UR[c] - UL[c]);
  };
  std::vector<double> fx(size_t(n + 1) * n * 3), fy(size_t(n) * (n + 1) * 3);
  par_for(std::int64_t(n + 1) * n, [&](std::int64_t t) {
    const int i = int(t % (n + 1)), j = int(t / (n + 1));
    double acc[3] = {0, 0, 0};
    for (int g = 0; g < qn; ++g) {
      const double yg = qn == 1 ? 0.0 : Gauss<2>::x[g];
      const double wg = qn == 1 ? 1.0 : Gauss<2>::w[g];
      double f[3];
      llf(point_state(i - 1, j, 0.5, yg), point_state(i, j, -0.5, yg), 0, f);
      for (int c = 0; c < 3; ++c) acc[c] += wg * f[c];
    }
    for (int c = 0; c < 3; ++c) fx[t * 3 + c] = acc[c];
  });
  par_for(std::int64_t(n) * (n + 1), [&](std::int64_t t) {
    const int i = int(t % n), j = int(t / n);
    double acc[3] = {0, 0, 0};
    for (int g = 0; g < qn; ++g) {
      const double xg = qn == 1 ? 0.0 : Gauss<2>::x[g];
      const double wg = qn == 1 ? 1.0 : Gauss<2>::w[g];
      double f[3];
      llf(point_state(i, j - 1, xg, 0.5), point_state(i, j, xg, -0.5), 1, f);
      for (int c = 0; c < 3; ++c) acc[c] += wg * f[c];
    }
    for (int c = 0; c < 3; ++c) fy[t * 3 + c] = acc[c];
  });
  auto fxa = [&](int i, int j, int c) { return fx[(size_t(i) + size_t(n + 1) * j) * 3 + c]; };
  auto fya = [&](int i, int j, int c) { return fy[(size_t(i) + size_t(n) * j) * 3 + c]; };
  par_for(std::int64_t(n) * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int(t / n);
    const size_t id = s.zid(i, j);
    out.rho[id] = -(fxa(i + 1, j, 0) - fxa(i, j, 0)) / h - (fya(i, j + 1, 0) - fya(i, j, 0)) / h;
    out.mx[id] = -(fxa(i + 1, j, 1) - fxa(i, j, 1)) / h - (fya(i, j + 1, 1) - fya(i, j, 1)) / h;
    out.my[id] = -(fxa(i + 1, j, 2) - fxa(i, j, 2)) / h - (fya(i, j + 1, 2) - fya(i, j, 2)) / h;
  });
  if (bad.load()) throw std::runtime_error("gpr: non-positive face density");
}

void axpy_state(const Solver& sv, FluidState& s, const FluidState& base, double cbase,
                const FluidState& prev, double cprev, const Rhs& r, double cdt) {
  const int n = s.n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const size_t id = s.zid(i, j);
      s.rho[id] = cbase * base.rho[id] + cprev * prev.rho[id] + cdt * r.rho[id];
      s.mx[id] = cbase * base.mx[id] + cprev * prev.mx[id] + cdt * r.mx[id];
      s.my[id] = cbase * base.my[id] + cprev * prev.my[id] + cdt * r.my[id];
      if (!(s.rho[id] > 0.0) || !std::isfinite(s.rho[id])) {
        std::ostringstream msg;
        msg << "gpr: step failure at zone (" << i << "," << j << "), rho=" << s.rho[id];
        throw std::runtime_error(msg.str());
      }
    }
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i < n; ++i) {
      const size_t id = s.xid(i, j);
      s.jx[id] = cbase * base.jx[id] + cprev * prev.jx[id] + cdt * r.jx[id];
    }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= n; ++i) {
      const size_t id = s.yid(i, j);
      s.jy[id] = cbase * base.jy[id] + cprev * prev.jy[id] + cdt * r.jy[id];
    }
  if (sv.bc == GprBc::Periodic) fill_periodic(s);
}

}  // namespace

void Solver::step(FluidState& s, double dt) const {
  Rhs r;
  r.rho.assign(s.rho.size(), 0.0);
  r.mx.assign(s.mx.size(), 0.0);
  r.my.assign(s.my.size(), 0.0);
  r.jx.assign(s.jx.size(), 0.0);
  r.jy.assign(s.jy.size(), 0.0);
  const FluidState u0 = s;
  if (order == 2) {
    compute_rhs(*this, s, r);
    axpy_state(*this, s, u0, 1.0, u0, 0.0, r, dt);      // u1
    compute_rhs(*this, s, r);
    axpy_state(*this, s, u0, 0.5, s, 0.5, r, 0.5 * dt);  // (u0 + u1 + dt L(u1))/2
    return;
  }
  // SSP-RK3 (orders 3 and 4)
  compute_rhs(*this, s, r);
  axpy_state(*this, s, u0, 1.0, u0, 0.0, r, dt);
  compute_rhs(*this, s, r);
  axpy_state(*this, s, u0, 0.75, s, 0.25, r, 0.25 * dt);
  compute_rhs(*this, s, r);
  axpy_state(*this, s, u0, 1.0 / 3.0, s, 2.0 / 3.0, r, 2.0 / 3.0 * dt);
}

void Solver::run(FluidState& s, double t_end,
                 const std::function<void(double, const FluidState&)>& monitor) const {
  double t = 0.0;
  if (monitor) monitor(t, s);
  while (t < t_end * (1.0 - 1e-14)) {
    const double dt = std::min(pick_dt(s), t_end - t);
    step(s, dt);
    t += dt;
    if (monitor) monitor(t, s);
  }
}

double energy_total(const FluidState& s) {
  double e = 0.0;
  for (int j = 0; j < s.n; ++j)
    for (int i = 0; i < s.n; ++i) {
      const double jxz = 0.5 * (s.jx[s.xid(i, j)] + s.jx[s.xid(i, j + 1)]);
      const double jyz = 0.5 * (s.jy[s.yid(i, j)] + s.jy[s.yid(i + 1, j)]);
      e += jxz * jxz + jyz * jyz;
    }
  return e * s.h * s.h;
}

double mass_total(const FluidState& s) {
  double m = 0.0;
  for (int j = 0; j < s.n; ++j)
    for (int i = 0; i < s.n; ++i) m += s.rho[s.zid(i, j)];
  return m * s.h * s.h;
}

double max_abs_j(const FluidState& s) {
  double m = 0.0;
  for (int j = 0; j <= s.n; ++j)
    for (int i = 0; i < s.n; ++i) m = std::max(m, std::abs(s.jx[s.xid(i, j)]));
  for (int j = 0; j < s.n; ++j)
    for (int i = 0; i <= s.n; ++i) m = std::max(m, std::abs(s.jy[s.yid(i, j)]));
  return m;
}

double curl_error(const FluidState& s) {
  double m = 0.0;
  for (int j = 0; j < s.n; ++j)
    for (int i = 0; i < s.n; ++i) {
      const double c = s.jx[s.xid(i, j)] - s.jx[s.xid(i, j + 1)] +
                       s.jy[s.yid(i + 1, j)] - s.jy[s.yid(i, j)];
      m = std::max(m, std::abs(c));
    }
  return m / s.h;
}

std::vector<ConvRow> convergence_study(const ModelParams& par,
                                       const std::vector<int>& orders,
                                       const std::vector<int>& meshes, double t_end,
                                       bool limited) {
  std::vector<ConvRow> rows;
  for (int ord : orders) {
    for (int n : meshes) {
      Solver sv;
      sv.par = par;
      sv.order = ord;
      sv.limited = limited;
      sv.profile = stationary_profile(par, 8.0, std::max(20000, 60 * n));
      FluidState s = sv.init_vortex(n);
      const FluidState ref = s;
      sv.run(s, t_end);
      double l1 = 0, linf = 0;
      size_t cnt = 0;
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i < n; ++i) {
          const double e = std::abs(s.jx[s.xid(i, j)] - ref.jx[ref.xid(i, j)]);
          l1 += e;
          linf = std::max(linf, e);
          ++cnt;
        }
      rows.push_back({ord, n, l1 / double(cnt), linf});
    }
  }
  return rows;
}

}  // namespace curlmesh::gpr
