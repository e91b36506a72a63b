#include "curlmesh/recon3d.hpp"

#include <cmath>
#include <stdexcept>

#include "curlmesh/basis.hpp"

namespace curlmesh::recon3d {

namespace {

inline double q2(double t) { return 1.0 - 4.0 * t * t; }
inline double dq2(double t) { return -8.0 * t; }

inline double edge_poly(const Edge1D& e, double t) {
  return e.avg + e.d1 * t + e.d2 * leg(2, t) + e.d3 * leg(3, t);
}

// bilinear corner weights for labels 1..4 in (t1,t2); w_i is 1 on edge i
inline void corner_w(double t1, double t2, double w[4]) {
  w[0] = (t1 - 0.5) * (t2 - 0.5);
  w[1] = (t1 + 0.5) * (0.5 - t2);
  w[2] = (0.5 - t1) * (t2 + 0.5);
  w[3] = (t1 + 0.5) * (t2 + 0.5);
}
inline void corner_dw1(double t2, double w[4]) {
  w[0] = (t2 - 0.5);
  w[1] = (0.5 - t2);
  w[2] = -(t2 + 0.5);
  w[3] = (t2 + 0.5);
}
inline void corner_dw2(double t1, double w[4]) {
  w[0] = (t1 - 0.5);
  w[1] = -(t1 + 0.5);
  w[2] = (0.5 - t1);
  w[3] = (t1 + 0.5);
}

struct CompEval {
  double v;    // component value
  double d1;   // d/dt1
  double d2;   // d/dt2
};

CompEval eval_component(const std::array<Edge1D, 4>& e, const Bubbles& b, double a,
                        double t1, double t2) {
  double w[4], dw1[4], dw2[4];
  corner_w(t1, t2, w);
  corner_dw1(t2, dw1);
  corner_dw2(t1, dw2);
  CompEval r{0.0, 0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    const double p = edge_poly(e[i], a);
    r.v += p * w[i];
    r.d1 += p * dw1[i];
    r.d2 += p * dw2[i];
  }
  const double q1 = q2(t1), qq2 = q2(t2), dq1 = dq2(t1), dqq2 = dq2(t2);
  r.v += b.c11 * q1 + b.c22 * qq2 + (b.c112 + b.cap112) * t2 * q1 +
         (b.c122 + b.cap122) * t1 * qq2 + b.c111 * t1 * q1 + b.c222 * t2 * qq2 +
         b.c1112 * t1 * t2 * q1 + b.c1222 * t1 * t2 * qq2 + b.capa1 * a * q1 +
         b.capa2 * a * qq2;
  r.d1 += b.c11 * dq1 + (b.c112 + b.cap112) * t2 * dq1 + (b.c122 + b.cap122) * qq2 +
          b.c111 * (q1 + t1 * dq1) + b.c1112 * t2 * (q1 + t1 * dq1) +
          b.c1222 * t2 * qq2 + b.capa1 * a * dq1;
  r.d2 += b.c22 * dqq2 + (b.c112 + b.cap112) * q1 + (b.c122 + b.cap122) * t1 * dqq2 +
          b.c222 * (qq2 + t2 * dqq2) + b.c1112 * t1 * q1 +
          b.c1222 * t1 * (qq2 + t2 * dqq2) + b.capa2 * a * dqq2;
  return r;
}

void check_domain(double x, double y, double z) {
  if (std::abs(x) > 0.5 + 1e-12 || std::abs(y) > 0.5 + 1e-12 ||
      std::abs(z) > 0.5 + 1e-12)
    throw std::domain_error("recon3d: point outside the unit zone");
}

void require_order(int order, const EdgeMoments3D& e, const CurlMoments3D& c,
                   Mode3D mode) {
  if (order < 1 || order > 3)
    throw std::invalid_argument("recon3d: order must be 1..3 "
                                "(4th-order data goes through the prolongation path)");
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 4; ++i) {
      const Edge1D& ed = e.e[a][i];
      if (order < 2 && ed.d1 != 0.0)
        throw std::invalid_argument("recon3d: edge moment above order");
      if (order < 3 && ed.d2 != 0.0)
        throw std::invalid_argument("recon3d: edge moment above order");
      if (ed.d3 != 0.0)
        throw std::invalid_argument("recon3d: cubic edge moments unsupported");
    }
  const double lin = std::abs(c.dy_rx) + std::abs(c.dz_rx) + std::abs(c.dx_ry) +
                     std::abs(c.dz_ry) + std::abs(c.dx_rz) + std::abs(c.dy_rz);
  const double quad = std::abs(c.dyy_rx) + std::abs(c.dzz_rx) + std::abs(c.dxx_ry) +
                      std::abs(c.dzz_ry) + std::abs(c.dxx_rz) + std::abs(c.dyy_rz) +
                      std::abs(c.dxy_rx) + std::abs(c.dyz_rx) + std::abs(c.dxz_rx) +
                      std::abs(c.dxy_ry) + std::abs(c.dyz_ry) + std::abs(c.dxz_ry) +
                      std::abs(c.dxy_rz) + std::abs(c.dyz_rz) + std::abs(c.dxz_rz);
  if (mode == Mode3D::CurlFree && lin + quad != 0.0)
    throw std::invalid_argument("recon3d: curl-free mode requires zero curl moments");
  if (order < 2 && lin != 0.0)
    throw std::invalid_argument("recon3d: curl moment above order");
  if (order < 3 && quad != 0.0)
    throw std::invalid_argument("recon3d: curl moment above order");
}

inline double comb(const std::array<Edge1D, 4>& e, double s1, double s2, double s3,
                   double s4, int mom) {
  auto get = [&](const Edge1D& x) { return mom == 0 ? x.avg : (mom == 1 ? x.d1 : x.d2); };
  return s1 * get(e[0]) + s2 * get(e[1]) + s3 * get(e[2]) + s4 * get(e[3]);
}

}  // namespace

FaceCirculations face_circulations(const EdgeMoments3D& edges) {
  const auto& ex = edges.e[0];
  const auto& ey = edges.e[1];
  const auto& ez = edges.e[2];
  FaceCirculations f;
  f.xp = ey[2].avg + ez[3].avg - ey[3].avg - ez[1].avg;
  f.xm = ey[0].avg + ez[2].avg - ey[1].avg - ez[0].avg;
  f.yp = ez[2].avg + ex[3].avg - ez[3].avg - ex[1].avg;
  f.ym = ez[0].avg + ex[2].avg - ez[1].avg - ex[0].avg;
  f.zp = ex[2].avg + ey[3].avg - ex[3].avg - ey[1].avg;
  f.zm = ex[0].avg + ey[2].avg - ex[1].avg - ey[0].avg;
  return f;
}

Recon3D reconstruct3d(int order, const EdgeMoments3D& edges, const CurlMoments3D& curl,
                      Mode3D mode) {
  require_order(order, edges, curl, mode);
  Recon3D r;
  r.order = order;
  r.mode = mode;
  r.edges = edges;
  r.curl = curl;
  if (order == 1) return r;

  const auto& ex = edges.e[0];
  const auto& ey = edges.e[1];
  const auto& ez = edges.e[2];

  // V^x in (x;y,z)
  r.bx.c11 = curl.dy_rz / 8 + comb(ey, 1, 1, -1, -1, 1) / 16;
  r.bx.c22 = -curl.dz_ry / 8 + comb(ez, 1, -1, 1, -1, 1) / 16;
  r.bx.c112 = comb(ey, -1, 1, 1, -1, 1) / 8;
  r.bx.c122 = comb(ez, -1, 1, 1, -1, 1) / 8;
  // V^y in (y;z,x)
  r.by.c11 = curl.dz_rx / 8 + comb(ez, 1, 1, -1, -1, 1) / 16;
  r.by.c22 = -curl.dx_rz / 8 + comb(ex, 1, -1, 1, -1, 1) / 16;
  r.by.c112 = comb(ez, -1, 1, 1, -1, 1) / 8;
  r.by.c122 = comb(ex, -1, 1, 1, -1, 1) / 8;
  // V^z in (z;x,y)
  r.bz.c11 = curl.dx_ry / 8 + comb(ex, 1, 1, -1, -1, 1) / 16;
  r.bz.c22 = -curl.dy_rx / 8 + comb(ey, 1, -1, 1, -1, 1) / 16;
  r.bz.c112 = comb(ex, -1, 1, 1, -1, 1) / 8;
  r.bz.c122 = comb(ey, -1, 1, 1, -1, 1) / 8;

  if (order == 3) {
    r.bx.c111 = curl.dyy_rz / 12 + comb(ey, 1, 1, -1, -1, 2) / 24;
    r.bx.c222 = -curl.dzz_ry / 12 + comb(ez, 1, -1, 1, -1, 2) / 24;
    r.bx.c1112 = comb(ey, -1, 1, 1, -1, 2) / 12;
    r.bx.c1222 = comb(ez, -1, 1, 1, -1, 2) / 12;
    r.by.c111 = curl.dzz_rx / 12 + comb(ez, 1, 1, -1, -1, 2) / 24;
    r.by.c222 = -curl.dxx_rz / 12 + comb(ex, 1, -1, 1, -1, 2) / 24;
    r.by.c1112 = comb(ez, -1, 1, 1, -1, 2) / 12;
    r.by.c1222 = comb(ex, -1, 1, 1, -1, 2) / 12;
    r.bz.c111 = curl.dxx_ry / 12 + comb(ex, 1, 1, -1, -1, 2) / 24;
    r.bz.c222 = -curl.dyy_rx / 12 + comb(ey, 1, -1, 1, -1, 2) / 24;
    r.bz.c1112 = comb(ex, -1, 1, 1, -1, 2) / 12;
    r.bz.c1222 = comb(ey, -1, 1, 1, -1, 2) / 12;
    if (mode == Mode3D::CurlPreserving) {
      r.bx.cap112 = curl.dyz_rz / 8;
      r.bx.cap122 = -curl.dyz_ry / 8;
      r.bx.capa1 = curl.dxy_rz / 16;
      r.bx.capa2 = -curl.dxz_ry / 16;
      r.by.cap112 = curl.dxz_rx / 8;
      r.by.cap122 = -curl.dxz_rz / 8;
      r.by.capa1 = curl.dyz_rx / 16;
      r.by.capa2 = -curl.dxy_rz / 16;
      r.bz.cap112 = curl.dxy_ry / 8;
      r.bz.cap122 = -curl.dxy_rx / 8;
      r.bz.capa1 = curl.dxz_ry / 16;
      r.bz.capa2 = -curl.dyz_rx / 16;
    }
  }
  return r;
}

std::array<double, 3> Recon3D::eval(double x, double y, double z) const {
  check_domain(x, y, z);
  const CompEval vx = eval_component(edges.e[0], bx, x, y, z);
  const CompEval vy = eval_component(edges.e[1], by, y, z, x);
  const CompEval vz = eval_component(edges.e[2], bz, z, x, y);
  return {vx.v, vy.v, vz.v};
}

std::array<double, 3> Recon3D::curl_at(double x, double y, double z) const {
  check_domain(x, y, z);
  const CompEval vx = eval_component(edges.e[0], bx, x, y, z);  // d1=d/dy, d2=d/dz
  const CompEval vy = eval_component(edges.e[1], by, y, z, x);  // d1=d/dz, d2=d/dx
  const CompEval vz = eval_component(edges.e[2], bz, z, x, y);  // d1=d/dx, d2=d/dy
  return {vz.d2 - vy.d1, vx.d2 - vz.d1, vy.d2 - vx.d1};
}

std::array<double, 3> Recon3D::target_curl(double x, double y, double z) const {
  const auto& ex = edges.e[0];
  const auto& ey = edges.e[1];
  const auto& ez = edges.e[2];
  const double r0x = 0.5 * (comb(ey, 1, -1, 1, -1, 0) - comb(ez, 1, 1, -1, -1, 0));
  const double lx = comb(ey, -1, 1, 1, -1, 0) + comb(ez, 1, -1, -1, 1, 0);
  const double r0y = 0.5 * (comb(ez, 1, -1, 1, -1, 0) - comb(ex, 1, 1, -1, -1, 0));
  const double ly = comb(ez, -1, 1, 1, -1, 0) + comb(ex, 1, -1, -1, 1, 0);
  const double r0z = 0.5 * (comb(ex, 1, -1, 1, -1, 0) - comb(ey, 1, 1, -1, -1, 0));
  const double lz = comb(ex, -1, 1, 1, -1, 0) + comb(ey, 1, -1, -1, 1, 0);
  double rx = r0x + lx * x;
  double ry = r0y + ly * y;
  double rz = r0z + lz * z;
  if (order >= 2) {
    rx += curl.dy_rx * y + curl.dz_rx * z;
    ry += curl.dx_ry * x + curl.dz_ry * z;
    rz += curl.dx_rz * x + curl.dy_rz * y;
  }
  if (order >= 3) {
    const double dxx_rx = curl.dxx_rx(), dyy_ry = curl.dyy_ry(), dzz_rz = curl.dzz_rz();
    rx += -dxx_rx / 6 + dxx_rx * leg(2, x) + curl.dyy_rx * leg(2, y) +
          curl.dzz_rx * leg(2, z) + curl.dxy_rx * x * y + curl.dyz_rx * y * z +
          curl.dxz_rx * x * z;
    ry += -dyy_ry / 6 + curl.dxx_ry * leg(2, x) + dyy_ry * leg(2, y) +
          curl.dzz_ry * leg(2, z) + curl.dxy_ry * x * y + curl.dyz_ry * y * z +
          curl.dxz_ry * x * z;
    rz += -dzz_rz / 6 + curl.dxx_rz * leg(2, x) + curl.dyy_rz * leg(2, y) +
          dzz_rz * leg(2, z) + curl.dxy_rz * x * y + curl.dyz_rz * y * z +
          curl.dxz_rz * x * z;
  }
  return {rx, ry, rz};
}

std::array<double, 3> zone_average3d(const EdgeMoments3D& edges,
                                     const CurlMoments3D& curl) {
  const auto& ex = edges.e[0];
  const auto& ey = edges.e[1];
  const auto& ez = edges.e[2];
  const double avx = 0.25 * comb(ex, 1, 1, 1, 1, 0) + (curl.dy_rz - curl.dz_ry) / 12 +
                     (curl.dyz_rz - curl.dyz_ry) / 72 +
                     (comb(ey, 1, 1, -1, -1, 1) + comb(ez, 1, -1, 1, -1, 1)) / 24;
  const double avy = 0.25 * comb(ey, 1, 1, 1, 1, 0) + (curl.dz_rx - curl.dx_rz) / 12 +
                     (curl.dxz_rx - curl.dxz_rz) / 72 +
                     (comb(ez, 1, 1, -1, -1, 1) + comb(ex, 1, -1, 1, -1, 1)) / 24;
  const double avz = 0.25 * comb(ez, 1, 1, 1, 1, 0) + (curl.dx_ry - curl.dy_rx) / 12 +
                     (curl.dxy_ry - curl.dxy_rx) / 72 +
                     (comb(ex, 1, 1, -1, -1, 1) + comb(ey, 1, -1, 1, -1, 1)) / 24;
  return {avx, avy, avz};
}

}  // namespace curlmesh::recon3d
