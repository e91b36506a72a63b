#include "curlmesh/prolong.hpp"

#include <cmath>
#include <stdexcept>

#include "curlmesh/basis.hpp"
#include "curlmesh/parallel.hpp"
#include "curlmesh/recon3d.hpp"
#include "curlmesh/weno.hpp"

namespace curlmesh::prolong {

using weno::Modal3;
using weno::Moments1D;

double harness_potential(double x, double y, double z) {
  const double tp = 2.0 * M_PI;
  return std::sin(tp * x) + 3.2 * std::cos(3 * tp * y) - 2.2 * std::sin(2 * tp * z) +
         1.5 * std::cos(2 * tp * y) * std::sin(tp * z) -
         2.3 * std::sin(2 * tp * x) * std::sin(3 * tp * z) +
         1.8 * std::cos(3 * tp * x) * std::sin(3 * tp * y);
}

CoarseField init_gradient_field(int n, const Potential& phi) {
  CoarseField f(n);
  const double h = 1.0 / n;
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    const double x = i * h, y = j * h, z = k * h;
    f.ex(i, j, k) = (phi(x + h, y, z) - phi(x, y, z)) / h;
    f.ey(i, j, k) = (phi(x, y + h, z) - phi(x, y, z)) / h;
    f.ez(i, j, k) = (phi(x, y, z + h) - phi(x, y, z)) / h;
  });
  return f;
}

double max_circulation(const EdgeField3& f) {
  const int n = f.n;
  std::vector<double> plane_max(n, 0.0);
  par_for(n, [&](std::int64_t kk) {
    const int k = int(kk);
    double m = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        // z-face at plane k, zone column (i,j)
        const double cz = f.ex(i, j, k) - f.ex(i, j + 1, k) + f.ey(i + 1, j, k) -
                          f.ey(i, j, k);
        // x-face at plane i... iterate all three orientations at (i,j,k)
        const double cx = f.ey(i, j, k) - f.ey(i, j, k + 1) + f.ez(i, j + 1, k) -
                          f.ez(i, j, k);
        const double cy = f.ez(i, j, k) - f.ez(i + 1, j, k) + f.ex(i, j, k + 1) -
                          f.ex(i, j, k);
        m = std::max({m, std::abs(cx), std::abs(cy), std::abs(cz)});
      }
    plane_max[k] = m;
  });
  double m = 0.0;
  for (double v : plane_max) m = std::max(m, v);
  return m;
}

// ---------------------------------------------------------------------------
// touch-up

TouchUp2DResult touchup2d(const TouchUp2D& t) {
  const double a = 0.5 * (t.xb1 - t.xt2 - t.fxc1 + t.fxc2 - t.yl2 + t.yr1 - t.fyc1 +
                          t.fyc2) -
                   0.5 * (t.rz2 + t.rz3);
  TouchUp2DResult r;
  r.alpha = a;
  r.xc1 = -0.5 * (t.rz1 + t.rz2) +
          0.25 * (3 * t.xb1 + t.xb2 + t.xt1 - t.xt2) - 0.5 * t.yl1 + 0.5 * t.yr1 -
          0.5 * a;
  r.xc2 = -0.5 * (t.rz1 + t.rz2) +
          0.25 * (t.xb1 + 3 * t.xb2 - t.xt1 + t.xt2) - 0.5 * t.yl1 + 0.5 * t.yr1 +
          0.5 * a;
  r.yc1 = 0.5 * (t.rz1 - t.rz2) + 0.25 * (-t.xb1 + t.xb2 + t.xt1 - t.xt2) +
          0.5 * t.yl1 + 0.5 * t.yr1 - 0.5 * a;
  r.yc2 = 0.5 * (t.rz1 + t.rz2) + t.rz3 +
          0.25 * (-3 * t.xb1 - t.xb2 + 3 * t.xt1 + t.xt2) + 0.5 * t.yl1 + t.yl2 -
          0.5 * t.yr1 + 0.5 * a;
  return r;
}

std::array<double, 12> internal_circulations(const TouchUp3D& t,
                                             const std::array<double, 6>& v) {
  const double xc1 = v[0], xc2 = v[1], yc1 = v[2], yc2 = v[3], zc1 = v[4], zc2 = v[5];
  return {
      // z-plane quadrants (x,y)
      t.xf_ym[0] - xc1 + yc1 - t.yf_xm[0],
      t.xf_ym[1] - xc2 + t.yf_xp[0] - yc1,
      xc1 - t.xf_yp[0] + yc2 - t.yf_xm[1],
      xc2 - t.xf_yp[1] + t.yf_xp[1] - yc2,
      // x-plane quadrants (y,z)
      t.yf_zm[0] - yc1 + zc1 - t.zf_ym[0],
      t.yf_zm[1] - yc2 + t.zf_yp[0] - zc1,
      yc1 - t.yf_zp[0] + zc2 - t.zf_ym[1],
      yc2 - t.yf_zp[1] + t.zf_yp[1] - zc2,
      // y-plane quadrants (z,x)
      t.zf_xm[0] - zc1 + xc1 - t.xf_zm[0],
      t.zf_xm[1] - zc2 + t.xf_zp[0] - xc1,
      zc1 - t.zf_xp[0] + xc2 - t.xf_zm[1],
      zc2 - t.zf_xp[1] + t.xf_zp[1] - xc2,
  };
}

namespace {
// faces owning the five independent targets, in internal_circulations order
constexpr int kFree[5] = {0, 1, 6, 7, 10};

// particular solution with xc1 = s, sequential back-substitution
std::array<double, 6> particular(const TouchUp3D& t, double s) {
  const auto& R = t.targets;
  std::array<double, 6> u{};
  u[0] = s;                                                        // xc1
  u[2] = u[0] + R[0] - (t.xf_ym[0] - t.yf_xm[0]);                  // yc1, face z(-,-)
  u[1] = -u[2] - R[1] + (t.xf_ym[1] + t.yf_xp[0]);                 // xc2, face z(+,-)
  u[5] = R[2] - (-t.yf_zp[0] - t.zf_ym[1]) - u[2];                 // zc2, face x(-,+)
  u[3] = R[3] - (-t.yf_zp[1] + t.zf_yp[1]) + u[5];                 // yc2, face x(+,+)
  u[4] = R[4] + t.zf_xp[0] + t.xf_zm[1] - u[1];                    // zc1, face y(-,+)
  return u;
}
}  // namespace

TouchUp3DResult touchup3d(const TouchUp3D& t) {
  const std::array<double, 6> u0 = particular(t, 0.0);
  // kernel direction of the circulation system
  static constexpr double kKer[6] = {1, -1, 1, -1, 1, -1};
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += kKer[i] * (t.cand[i] - u0[i]);
  s /= 6.0;
  TouchUp3DResult r;
  for (int i = 0; i < 6; ++i) r.v[i] = u0[i] + kKer[i] * s;
  r.beta = s;
  r.achieved = internal_circulations(t, r.v);
  return r;
}

std::array<double, 5> reduce_targets(const TouchUp3D& t, const std::array<double, 12>& full,
                                     double tol) {
  TouchUp3D probe = t;
  for (int i = 0; i < 5; ++i) probe.targets[i] = full[kFree[i]];
  const auto u = particular(probe, 0.0);
  const auto implied = internal_circulations(t, u);
  double scale = 1.0;
  for (double v : full) scale = std::max(scale, std::abs(v));
  for (int f = 0; f < 12; ++f)
    if (std::abs(implied[f] - full[f]) > tol * scale)
      throw std::invalid_argument("touchup3d: inconsistent circulation targets");
  return probe.targets;
}

// ---------------------------------------------------------------------------
// prolongation pipeline

namespace {

struct Mom3Field {
  int n = 0;
  std::vector<Moments1D> v;
  Moments1D& at(const EdgeField3& ref, int i, int j, int k) {
    return v[ref.idx(i, j, k)];
  }
  const Moments1D& at(const EdgeField3& ref, int i, int j, int k) const {
    return v[ref.idx(i, j, k)];
  }
};

// per-edge 1D WENO moments along the edge's own axis
Mom3Field edge_moments(const CoarseField& c, int axis, int order) {
  const int n = c.n;
  Mom3Field mf;
  mf.n = n;
  mf.v.resize(size_t(n) * n * n);
  const int r = weno::radius(order);
  par_for(std::int64_t(n) * n * n, [&](std::int64_t idx) {
    const int i = int(idx % n), j = int((idx / n) % n),
              k = int(idx / (std::int64_t(n) * n));
    double win[5];
    for (int o = -r; o <= r; ++o) {
      const int ii = axis == 0 ? i + o : i;
      const int jj = axis == 1 ? j + o : j;
      const int kk = axis == 2 ? k + o : k;
      win[o + r] = axis == 0 ? c.ex(ii, jj, kk)
                             : (axis == 1 ? c.ey(ii, jj, kk) : c.ez(ii, jj, kk));
    }
    mf.v[idx] = weno::moments(order, win + r, 1);
  });
  return mf;
}

// zone averages of one component from the edge means/slopes (4th-order form,
// curl-free data)
std::vector<double> component_average(const CoarseField& c, const Mom3Field& m1,
                                      const Mom3Field& m2, int comp) {
  const int n = c.n;
  std::vector<double> av(size_t(n) * n * n);
  par_for(std::int64_t(n) * n * n, [&](std::int64_t idx) {
    const int i = int(idx % n), j = int((idx / n) % n),
              k = int(idx / (std::int64_t(n) * n));
    double avg = 0.0, slopes = 0.0;
    if (comp == 0) {
      avg = 0.25 * (c.ex(i, j, k) + c.ex(i, j + 1, k) + c.ex(i, j, k + 1) +
                    c.ex(i, j + 1, k + 1));
      // y-edge labels (z,x): 1=(k,i) 2=(k+1,i) 3=(k,i+1) 4=(k+1,i+1)
      slopes += m1.at(c, i, j, k).d1 + m1.at(c, i, j, k + 1).d1 -
                m1.at(c, i + 1, j, k).d1 - m1.at(c, i + 1, j, k + 1).d1;
      // z-edge labels (x,y): 1=(i,j) 2=(i+1,j) 3=(i,j+1) 4=(i+1,j+1)
      slopes += m2.at(c, i, j, k).d1 - m2.at(c, i + 1, j, k).d1 +
                m2.at(c, i, j + 1, k).d1 - m2.at(c, i + 1, j + 1, k).d1;
    } else if (comp == 1) {
      avg = 0.25 * (c.ey(i, j, k) + c.ey(i, j, k + 1) + c.ey(i + 1, j, k) +
                    c.ey(i + 1, j, k + 1));
      // z-edges pattern (1,1,-1,-1), x-edges pattern (1,-1,1,-1)
      slopes += m1.at(c, i, j, k).d1 + m1.at(c, i + 1, j, k).d1 -
                m1.at(c, i, j + 1, k).d1 - m1.at(c, i + 1, j + 1, k).d1;
      slopes += m2.at(c, i, j, k).d1 - m2.at(c, i, j + 1, k).d1 +
                m2.at(c, i, j, k + 1).d1 - m2.at(c, i, j + 1, k + 1).d1;
    } else {
      avg = 0.25 * (c.ez(i, j, k) + c.ez(i + 1, j, k) + c.ez(i, j + 1, k) +
                    c.ez(i + 1, j + 1, k));
      // x-edges pattern (1,1,-1,-1), y-edges pattern (1,-1,1,-1)
      slopes += m1.at(c, i, j, k).d1 + m1.at(c, i, j + 1, k).d1 -
                m1.at(c, i, j, k + 1).d1 - m1.at(c, i, j + 1, k + 1).d1;
      slopes += m2.at(c, i, j, k).d1 - m2.at(c, i, j, k + 1).d1 +
                m2.at(c, i + 1, j, k).d1 - m2.at(c, i + 1, j, k + 1).d1;
    }
    av[idx] = avg + slopes / 24.0;
  });
  return av;
}

// dimension-by-dimension modal WENO of a zone-averaged scalar field
std::vector<Modal3> build_modal(const std::vector<double>& avg, int n, int order) {
  const EdgeField3 ref(n);  // only for idx()
  const std::int64_t nz = std::int64_t(n) * n * n;
  const int r = weno::radius(order);
  std::vector<Modal3> out(nz);
  auto gather = [&](const std::vector<double>& f, int axis, int i, int j, int k,
                    double* win) {
    for (int o = -r; o <= r; ++o)
      win[o + r] = f[ref.idx(axis == 0 ? i + o : i, axis == 1 ? j + o : j,
                             axis == 2 ? k + o : k)];
  };
  std::vector<double> cx1(nz), cx2(nz), cx3(nz), cy1(nz), cy2(nz), cxy(nz);
  // x pass
  par_for(nz, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    double w[5];
    gather(avg, 0, i, j, k, w);
    const auto m = weno::moments(order, w + r, 1);
    cx1[t] = m.d1;
    cx2[t] = m.d2;
    cx3[t] = m.d3;
  });
  // y pass
  par_for(nz, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    double w[5];
    gather(avg, 1, i, j, k, w);
    const auto m = weno::moments(order, w + r, 1);
    Modal3& md = out[t];
    md.c[0] = avg[t];
    md.c[1] = cx1[t];
    md.c[2] = m.d1;
    md.c[4] = cx2[t];
    md.c[7] = m.d2;
    md.c[10] = cx3[t];
    md.c[16] = m.d3;
    cy1[t] = m.d1;
    cy2[t] = m.d2;
    if (order >= 3) {
      double wx[5];
      gather(cx1, 1, i, j, k, wx);
      const auto mm = weno::moments(order - 1, wx + r, 1);
      md.c[5] = mm.d1;   // xy
      md.c[13] = mm.d2;  // xyy
      cxy[t] = mm.d1;
      if (order >= 4) {
        double wxx[5];
        gather(cx2, 1, i, j, k, wxx);
        md.c[11] = weno::moments(2, wxx + r, 1).d1;  // xxy
      }
    }
  });
  // z pass
  par_for(nz, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    Modal3& md = out[t];
    double w[5];
    gather(avg, 2, i, j, k, w);
    const auto m = weno::moments(order, w + r, 1);
    md.c[3] = m.d1;
    md.c[9] = m.d2;
    md.c[19] = m.d3;
    if (order >= 3) {
      double wa[5];
      gather(cx1, 2, i, j, k, wa);
      const auto mxz = weno::moments(order - 1, wa + r, 1);
      md.c[6] = mxz.d1;   // xz
      md.c[15] = mxz.d2;  // xzz
      gather(cy1, 2, i, j, k, wa);
      const auto myz = weno::moments(order - 1, wa + r, 1);
      md.c[8] = myz.d1;   // yz
      md.c[18] = myz.d2;  // yzz
      if (order >= 4) {
        gather(cx2, 2, i, j, k, wa);
        md.c[12] = weno::moments(2, wa + r, 1).d1;  // xxz
        gather(cy2, 2, i, j, k, wa);
        md.c[17] = weno::moments(2, wa + r, 1).d1;  // yyz
        gather(cxy, 2, i, j, k, wa);
        md.c[14] = weno::moments(2, wa + r, 1).d1;  // xyz
      }
    }
  });
  return out;
}

inline double half_mean(const Moments1D& m, double avg, bool right) {
  // mean of the edge polynomial over one half of the edge
  const double s = right ? 1.0 : -1.0;
  return avg + s * (m.d1 / 4.0 - m.d3 / 160.0);
}

}  // namespace

EdgeField3 prolong_field(const CoarseField& coarse, int order, ProlongMode mode) {
  if (order < 2 || order > 4)
    throw std::invalid_argument("prolong_field: order must be 2..4");
  if (mode == ProlongMode::ExactRecon && order > 3)
    throw std::invalid_argument("prolong_field: exact reconstruction supports order 2..3");
  const int n = coarse.n;
  const int nf = 2 * n;
  EdgeField3 fine(nf);

  const Mom3Field mx = edge_moments(coarse, 0, order);
  const Mom3Field my = edge_moments(coarse, 1, order);
  const Mom3Field mz = edge_moments(coarse, 2, order);

  // type 1: halves of the coarse edges from the 1D reconstruction
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    fine.ex(2 * i, 2 * j, 2 * k) = half_mean(mx.v[t], coarse.x[t], false);
    fine.ex(2 * i + 1, 2 * j, 2 * k) = half_mean(mx.v[t], coarse.x[t], true);
    fine.ey(2 * i, 2 * j, 2 * k) = half_mean(my.v[t], coarse.y[t], false);
    fine.ey(2 * i, 2 * j + 1, 2 * k) = half_mean(my.v[t], coarse.y[t], true);
    fine.ez(2 * i, 2 * j, 2 * k) = half_mean(mz.v[t], coarse.z[t], false);
    fine.ez(2 * i, 2 * j, 2 * k + 1) = half_mean(mz.v[t], coarse.z[t], true);
  });

  if (mode == ProlongMode::ExactRecon) {
    // per-zone curl-free reconstruction evaluated along the fine edges
    auto zone_recon = [&](int i, int j, int k) {
      recon3d::EdgeMoments3D em;
      auto fill = [&](int axis, int label, const Moments1D& m, double avg) {
        auto& e = em.at(axis, label);
        e.avg = avg;
        if (order >= 2) e.d1 = m.d1;
        if (order >= 3) e.d2 = m.d2;
      };
      fill(0, 1, mx.at(coarse, i, j, k), coarse.ex(i, j, k));
      fill(0, 2, mx.at(coarse, i, j + 1, k), coarse.ex(i, j + 1, k));
      fill(0, 3, mx.at(coarse, i, j, k + 1), coarse.ex(i, j, k + 1));
      fill(0, 4, mx.at(coarse, i, j + 1, k + 1), coarse.ex(i, j + 1, k + 1));
      fill(1, 1, my.at(coarse, i, j, k), coarse.ey(i, j, k));
      fill(1, 2, my.at(coarse, i, j, k + 1), coarse.ey(i, j, k + 1));
      fill(1, 3, my.at(coarse, i + 1, j, k), coarse.ey(i + 1, j, k));
      fill(1, 4, my.at(coarse, i + 1, j, k + 1), coarse.ey(i + 1, j, k + 1));
      fill(2, 1, mz.at(coarse, i, j, k), coarse.ez(i, j, k));
      fill(2, 2, mz.at(coarse, i + 1, j, k), coarse.ez(i + 1, j, k));
      fill(2, 3, mz.at(coarse, i, j + 1, k), coarse.ez(i, j + 1, k));
      fill(2, 4, mz.at(coarse, i + 1, j + 1, k), coarse.ez(i + 1, j + 1, k));
      return recon3d::reconstruct3d(order, em, {}, recon3d::Mode3D::CurlFree);
    };
    // mean of component `comp` along a fine edge inside zone (i,j,k)
    auto line_mean = [&](const recon3d::Recon3D& rc, int comp, bool right, double u,
                         double v) {
      const double a = right ? 0.25 : -0.25;
      double s = 0.0;
      for (int g = 0; g < 3; ++g) {
        const double q = a + 0.25 * 2.0 * Gauss<3>::x[g];
        double p[3];
        if (comp == 0)
          p[0] = q, p[1] = u, p[2] = v;
        else if (comp == 1)
          p[1] = q, p[2] = u, p[0] = v;
        else
          p[2] = q, p[0] = u, p[1] = v;
        s += Gauss<3>::w[g] * rc.eval(p[0], p[1], p[2])[comp];
      }
      return s;
    };
    par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
      const int i = int(t % n), j = int((t / n) % n),
                k = int(t / (std::int64_t(n) * n));
      const auto rc = zone_recon(i, j, k);
      // type 3 (owned by this zone)
      fine.ex(2 * i, 2 * j + 1, 2 * k + 1) = line_mean(rc, 0, false, 0.0, 0.0);
      fine.ex(2 * i + 1, 2 * j + 1, 2 * k + 1) = line_mean(rc, 0, true, 0.0, 0.0);
      fine.ey(2 * i + 1, 2 * j, 2 * k + 1) = line_mean(rc, 1, false, 0.0, 0.0);
      fine.ey(2 * i + 1, 2 * j + 1, 2 * k + 1) = line_mean(rc, 1, true, 0.0, 0.0);
      fine.ez(2 * i + 1, 2 * j + 1, 2 * k) = line_mean(rc, 2, false, 0.0, 0.0);
      fine.ez(2 * i + 1, 2 * j + 1, 2 * k + 1) = line_mean(rc, 2, true, 0.0, 0.0);
      // type 2: contribute half the average to the low faces of this zone;
      // the neighbor contributes the other half (periodic accumulate is racy,
      // so write the full two-zone average from the owning low side instead)
    });
    // type 2 via explicit two-zone averages
    par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
      const int i = int(t % n), j = int((t / n) % n),
                k = int(t / (std::int64_t(n) * n));
      const auto zlo = zone_recon(i, j, k);
      // x-edges in the z-plane below this zone (shared with zone k-1)
      const auto zdn = zone_recon(i, j, k - 1);
      fine.ex(2 * i, 2 * j + 1, 2 * k) =
          0.5 * (line_mean(zlo, 0, false, 0.0, -0.5) + line_mean(zdn, 0, false, 0.0, 0.5));
      fine.ex(2 * i + 1, 2 * j + 1, 2 * k) =
          0.5 * (line_mean(zlo, 0, true, 0.0, -0.5) + line_mean(zdn, 0, true, 0.0, 0.5));
      // x-edges in the y-plane below this zone (shared with zone j-1)
      const auto ydn = zone_recon(i, j - 1, k);
      fine.ex(2 * i, 2 * j, 2 * k + 1) =
          0.5 * (line_mean(zlo, 0, false, -0.5, 0.0) + line_mean(ydn, 0, false, 0.5, 0.0));
      fine.ex(2 * i + 1, 2 * j, 2 * k + 1) =
          0.5 * (line_mean(zlo, 0, true, -0.5, 0.0) + line_mean(ydn, 0, true, 0.5, 0.0));
      // y-edges: transverse cyclic (z,x)
      const auto xdn = zone_recon(i - 1, j, k);
      fine.ey(2 * i, 2 * j, 2 * k + 1) =
          0.5 * (line_mean(zlo, 1, false, 0.0, -0.5) + line_mean(xdn, 1, false, 0.0, 0.5));
      fine.ey(2 * i, 2 * j + 1, 2 * k + 1) =
          0.5 * (line_mean(zlo, 1, true, 0.0, -0.5) + line_mean(xdn, 1, true, 0.0, 0.5));
      fine.ey(2 * i + 1, 2 * j, 2 * k) =
          0.5 * (line_mean(zlo, 1, false, -0.5, 0.0) + line_mean(zdn, 1, false, 0.5, 0.0));
      fine.ey(2 * i + 1, 2 * j + 1, 2 * k) =
          0.5 * (line_mean(zlo, 1, true, -0.5, 0.0) + line_mean(zdn, 1, true, 0.5, 0.0));
      // z-edges: transverse cyclic (x,y)
      fine.ez(2 * i, 2 * j + 1, 2 * k) =
          0.5 * (line_mean(zlo, 2, false, -0.5, 0.0) + line_mean(xdn, 2, false, 0.5, 0.0));
      fine.ez(2 * i, 2 * j + 1, 2 * k + 1) =
          0.5 * (line_mean(zlo, 2, true, -0.5, 0.0) + line_mean(xdn, 2, true, 0.5, 0.0));
      fine.ez(2 * i + 1, 2 * j, 2 * k) =
          0.5 * (line_mean(zlo, 2, false, 0.0, -0.5) + line_mean(ydn, 2, false, 0.0, 0.5));
      fine.ez(2 * i + 1, 2 * j, 2 * k + 1) =
          0.5 * (line_mean(zlo, 2, true, 0.0, -0.5) + line_mean(ydn, 2, true, 0.0, 0.5));
    });
    return fine;
  }

  // FV path: zone averages -> modal WENO per component -> candidates
  const auto avx = component_average(coarse, my, mz, 0);
  const auto avy = component_average(coarse, mz, mx, 1);
  const auto avz = component_average(coarse, mx, my, 2);

  {
    const auto modal = build_modal(avx, n, order);
    par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
      const int i = int(t % n), j = int((t / n) % n),
                k = int(t / (std::int64_t(n) * n));
      const Modal3& lo = modal[t];
      auto lm = [&](const Modal3& m, bool right, double u, double v) {
        return m.line_mean(0, right ? 0.0 : -0.5, right ? 0.5 : 0.0, u, v);
      };
      // interior (type 3)
      fine.ex(2 * i, 2 * j + 1, 2 * k + 1) = lm(lo, false, 0.0, 0.0);
      fine.ex(2 * i + 1, 2 * j + 1, 2 * k + 1) = lm(lo, true, 0.0, 0.0);
      // type 2 on the low z-face (y interior) and low y-face (z interior)
      const Modal3& zdn = modal[coarse.idx(i, j, k - 1)];
      fine.ex(2 * i, 2 * j + 1, 2 * k) =
          0.5 * (lm(lo, false, 0.0, -0.5) + lm(zdn, false, 0.0, 0.5));
      fine.ex(2 * i + 1, 2 * j + 1, 2 * k) =
          0.5 * (lm(lo, true, 0.0, -0.5) + lm(zdn, true, 0.0, 0.5));
      const Modal3& ydn = modal[coarse.idx(i, j - 1, k)];
      fine.ex(2 * i, 2 * j, 2 * k + 1) =
          0.5 * (lm(lo, false, -0.5, 0.0) + lm(ydn, false, 0.5, 0.0));
      fine.ex(2 * i + 1, 2 * j, 2 * k + 1) =
          0.5 * (lm(lo, true, -0.5, 0.0) + lm(ydn, true, 0.5, 0.0));
    });
  }
  {
    const auto modal = build_modal(avy, n, order);
    par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
      const int i = int(t % n), j = int((t / n) % n),
                k = int(t / (std::int64_t(n) * n));
      const Modal3& lo = modal[t];
      auto lm = [&](const Modal3& m, bool right, double u, double v) {
        // cyclic transverse order for axis 1 is (z,x)
        return m.line_mean(1, right ? 0.0 : -0.5, right ? 0.5 : 0.0, u, v);
      };
      fine.ey(2 * i + 1, 2 * j, 2 * k + 1) = lm(lo, false, 0.0, 0.0);
      fine.ey(2 * i + 1, 2 * j + 1, 2 * k + 1) = lm(lo, true, 0.0, 0.0);
      const Modal3& xdn = modal[coarse.idx(i - 1, j, k)];
      fine.ey(2 * i, 2 * j, 2 * k + 1) =
          0.5 * (lm(lo, false, 0.0, -0.5) + lm(xdn, false, 0.0, 0.5));
      fine.ey(2 * i, 2 * j + 1, 2 * k + 1) =
          0.5 * (lm(lo, true, 0.0, -0.5) + lm(xdn, true, 0.0, 0.5));
      const Modal3& zdn = modal[coarse.idx(i, j, k - 1)];
      fine.ey(2 * i + 1, 2 * j, 2 * k) =
          0.5 * (lm(lo, false, -0.5, 0.0) + lm(zdn, false, 0.5, 0.0));
      fine.ey(2 * i + 1, 2 * j + 1, 2 * k) =
          0.5 * (lm(lo, true, -0.5, 0.0) + lm(zdn, true, 0.5, 0.0));
    });
  }
  {
    const auto modal = build_modal(avz, n, order);
    par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
      const int i = int(t % n), j = int((t / n) % n),
                k = int(t / (std::int64_t(n) * n));
      const Modal3& lo = modal[t];
      auto lm = [&](const Modal3& m, bool right, double u, double v) {
        // cyclic transverse order for axis 2 is (x,y)
        return m.line_mean(2, right ? 0.0 : -0.5, right ? 0.5 : 0.0, u, v);
      };
      fine.ez(2 * i + 1, 2 * j + 1, 2 * k) = lm(lo, false, 0.0, 0.0);
      fine.ez(2 * i + 1, 2 * j + 1, 2 * k + 1) = lm(lo, true, 0.0, 0.0);
      const Modal3& ydn = modal[coarse.idx(i, j - 1, k)];
      fine.ez(2 * i + 1, 2 * j, 2 * k) =
          0.5 * (lm(lo, false, 0.0, -0.5) + lm(ydn, false, 0.0, 0.5));
      fine.ez(2 * i + 1, 2 * j, 2 * k + 1) =
          0.5 * (lm(lo, true, 0.0, -0.5) + lm(ydn, true, 0.0, 0.5));
      const Modal3& xdn = modal[coarse.idx(i - 1, j, k)];
      fine.ez(2 * i, 2 * j + 1, 2 * k) =
          0.5 * (lm(lo, false, -0.5, 0.0) + lm(xdn, false, 0.5, 0.0));
      fine.ez(2 * i, 2 * j + 1, 2 * k + 1) =
          0.5 * (lm(lo, true, -0.5, 0.0) + lm(xdn, true, 0.5, 0.0));
    });
  }

  if (mode == ProlongMode::Naive) return fine;

  // touch-up pass 1: every coarse face, in-plane 2D problem (targets zero)
  // z-faces
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), K = int(t / (std::int64_t(n) * n));
    TouchUp2D q;
    q.xb1 = fine.ex(2 * i, 2 * j, 2 * K);
    q.xb2 = fine.ex(2 * i + 1, 2 * j, 2 * K);
    q.xt1 = fine.ex(2 * i, 2 * j + 2, 2 * K);
    q.xt2 = fine.ex(2 * i + 1, 2 * j + 2, 2 * K);
    q.yl1 = fine.ey(2 * i, 2 * j, 2 * K);
    q.yl2 = fine.ey(2 * i, 2 * j + 1, 2 * K);
    q.yr1 = fine.ey(2 * i + 2, 2 * j, 2 * K);
    q.yr2 = fine.ey(2 * i + 2, 2 * j + 1, 2 * K);
    q.fxc1 = fine.ex(2 * i, 2 * j + 1, 2 * K);
    q.fxc2 = fine.ex(2 * i + 1, 2 * j + 1, 2 * K);
    q.fyc1 = fine.ey(2 * i + 1, 2 * j, 2 * K);
    q.fyc2 = fine.ey(2 * i + 1, 2 * j + 1, 2 * K);
    const auto r = touchup2d(q);
    fine.ex(2 * i, 2 * j + 1, 2 * K) = r.xc1;
    fine.ex(2 * i + 1, 2 * j + 1, 2 * K) = r.xc2;
    fine.ey(2 * i + 1, 2 * j, 2 * K) = r.yc1;
    fine.ey(2 * i + 1, 2 * j + 1, 2 * K) = r.yc2;
  });
  // x-faces: in-plane axes (y,z)
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int I = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    TouchUp2D q;
    q.xb1 = fine.ey(2 * I, 2 * j, 2 * k);
    q.xb2 = fine.ey(2 * I, 2 * j + 1, 2 * k);
    q.xt1 = fine.ey(2 * I, 2 * j, 2 * k + 2);
    q.xt2 = fine.ey(2 * I, 2 * j + 1, 2 * k + 2);
    q.yl1 = fine.ez(2 * I, 2 * j, 2 * k);
    q.yl2 = fine.ez(2 * I, 2 * j, 2 * k + 1);
    q.yr1 = fine.ez(2 * I, 2 * j + 2, 2 * k);
    q.yr2 = fine.ez(2 * I, 2 * j + 2, 2 * k + 1);
    q.fxc1 = fine.ey(2 * I, 2 * j, 2 * k + 1);
    q.fxc2 = fine.ey(2 * I, 2 * j + 1, 2 * k + 1);
    q.fyc1 = fine.ez(2 * I, 2 * j + 1, 2 * k);
    q.fyc2 = fine.ez(2 * I, 2 * j + 1, 2 * k + 1);
    const auto r = touchup2d(q);
    fine.ey(2 * I, 2 * j, 2 * k + 1) = r.xc1;
    fine.ey(2 * I, 2 * j + 1, 2 * k + 1) = r.xc2;
    fine.ez(2 * I, 2 * j + 1, 2 * k) = r.yc1;
    fine.ez(2 * I, 2 * j + 1, 2 * k + 1) = r.yc2;
  });
  // y-faces: in-plane axes (z,x)
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), J = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    TouchUp2D q;
    q.xb1 = fine.ez(2 * i, 2 * J, 2 * k);
    q.xb2 = fine.ez(2 * i, 2 * J, 2 * k + 1);
    q.xt1 = fine.ez(2 * i + 2, 2 * J, 2 * k);
    q.xt2 = fine.ez(2 * i + 2, 2 * J, 2 * k + 1);
    q.yl1 = fine.ex(2 * i, 2 * J, 2 * k);
    q.yl2 = fine.ex(2 * i + 1, 2 * J, 2 * k);
    q.yr1 = fine.ex(2 * i, 2 * J, 2 * k + 2);
    q.yr2 = fine.ex(2 * i + 1, 2 * J, 2 * k + 2);
    q.fxc1 = fine.ez(2 * i + 1, 2 * J, 2 * k);
    q.fxc2 = fine.ez(2 * i + 1, 2 * J, 2 * k + 1);
    q.fyc1 = fine.ex(2 * i, 2 * J, 2 * k + 1);
    q.fyc2 = fine.ex(2 * i + 1, 2 * J, 2 * k + 1);
    const auto r = touchup2d(q);
    fine.ez(2 * i + 1, 2 * J, 2 * k) = r.xc1;
    fine.ez(2 * i + 1, 2 * J, 2 * k + 1) = r.xc2;
    fine.ex(2 * i, 2 * J, 2 * k + 1) = r.yc1;
    fine.ex(2 * i + 1, 2 * J, 2 * k + 1) = r.yc2;
  });

  // touch-up pass 2: every coarse zone, interior 3D problem (targets zero)
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    TouchUp3D q;
    q.xf_ym = {fine.ex(2 * i, 2 * j, 2 * k + 1), fine.ex(2 * i + 1, 2 * j, 2 * k + 1)};
    q.xf_yp = {fine.ex(2 * i, 2 * j + 2, 2 * k + 1),
               fine.ex(2 * i + 1, 2 * j + 2, 2 * k + 1)};
    q.xf_zm = {fine.ex(2 * i, 2 * j + 1, 2 * k), fine.ex(2 * i + 1, 2 * j + 1, 2 * k)};
    q.xf_zp = {fine.ex(2 * i, 2 * j + 1, 2 * k + 2),
               fine.ex(2 * i + 1, 2 * j + 1, 2 * k + 2)};
    q.yf_zm = {fine.ey(2 * i + 1, 2 * j, 2 * k), fine.ey(2 * i + 1, 2 * j + 1, 2 * k)};
    q.yf_zp = {fine.ey(2 * i + 1, 2 * j, 2 * k + 2),
               fine.ey(2 * i + 1, 2 * j + 1, 2 * k + 2)};
    q.yf_xm = {fine.ey(2 * i, 2 * j, 2 * k + 1), fine.ey(2 * i, 2 * j + 1, 2 * k + 1)};
    q.yf_xp = {fine.ey(2 * i + 2, 2 * j, 2 * k + 1),
               fine.ey(2 * i + 2, 2 * j + 1, 2 * k + 1)};
    q.zf_xm = {fine.ez(2 * i, 2 * j + 1, 2 * k), fine.ez(2 * i, 2 * j + 1, 2 * k + 1)};
    q.zf_xp = {fine.ez(2 * i + 2, 2 * j + 1, 2 * k),
               fine.ez(2 * i + 2, 2 * j + 1, 2 * k + 1)};
    q.zf_ym = {fine.ez(2 * i + 1, 2 * j, 2 * k), fine.ez(2 * i + 1, 2 * j, 2 * k + 1)};
    q.zf_yp = {fine.ez(2 * i + 1, 2 * j + 2, 2 * k),
               fine.ez(2 * i + 1, 2 * j + 2, 2 * k + 1)};
    q.cand = {fine.ex(2 * i, 2 * j + 1, 2 * k + 1),
              fine.ex(2 * i + 1, 2 * j + 1, 2 * k + 1),
              fine.ey(2 * i + 1, 2 * j, 2 * k + 1),
              fine.ey(2 * i + 1, 2 * j + 1, 2 * k + 1),
              fine.ez(2 * i + 1, 2 * j + 1, 2 * k),
              fine.ez(2 * i + 1, 2 * j + 1, 2 * k + 1)};
    const auto r = touchup3d(q);
    fine.ex(2 * i, 2 * j + 1, 2 * k + 1) = r.v[0];
    fine.ex(2 * i + 1, 2 * j + 1, 2 * k + 1) = r.v[1];
    fine.ey(2 * i + 1, 2 * j, 2 * k + 1) = r.v[2];
    fine.ey(2 * i + 1, 2 * j + 1, 2 * k + 1) = r.v[3];
    fine.ez(2 * i + 1, 2 * j + 1, 2 * k) = r.v[4];
    fine.ez(2 * i + 1, 2 * j + 1, 2 * k + 1) = r.v[5];
  });

  return fine;
}

}  // namespace curlmesh::prolong
