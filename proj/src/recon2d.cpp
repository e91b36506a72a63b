#include "curlmesh/recon2d.hpp"

#include <cmath>
#include <stdexcept>

#include "curlmesh/basis.hpp"
#include "curlmesh/weno.hpp"

namespace curlmesh::recon2d {

namespace {

inline double q2(double t) { return 1.0 - 4.0 * t * t; }   // bubble, zero at +-1/2
inline double dq2(double t) { return -8.0 * t; }

inline double edge_poly(const Edge1D& e, double t) {
  return e.avg + e.d1 * t + e.d2 * leg(2, t) + e.d3 * leg(3, t);
}

void require_zero_above(int order, const EdgeMoments2D& e, const CurlMoments2D& c) {
  auto bad = [](double v) { return v != 0.0; };
  const Edge1D* edges[4] = {&e.xb, &e.xt, &e.yl, &e.yr};
  for (auto* ed : edges) {
    if (order < 2 && bad(ed->d1)) throw std::invalid_argument("edge moment above order");
    if (order < 3 && bad(ed->d2)) throw std::invalid_argument("edge moment above order");
    if (order < 4 && bad(ed->d3)) throw std::invalid_argument("edge moment above order");
  }
  if (order < 2 && (bad(c.dx) || bad(c.dy)))
    throw std::invalid_argument("curl moment above order");
  if (order < 3 && (bad(c.dxx) || bad(c.dyy) || bad(c.dxy)))
    throw std::invalid_argument("curl moment above order");
  if (order < 4 && (bad(c.dxxx) || bad(c.dyyy) || bad(c.dxxy) || bad(c.dxyy)))
    throw std::invalid_argument("curl moment above order");
}

void check_domain(double x, double y) {
  if (std::abs(x) > 0.5 + 1e-12 || std::abs(y) > 0.5 + 1e-12)
    throw std::domain_error("recon2d: point outside the unit zone");
}

}  // namespace

Recon2D reconstruct2d(int order, const EdgeMoments2D& edges, const CurlMoments2D& curl,
                      std::optional<std::pair<double, double>> zone_modes,
                      O4Closure closure) {
  if (order < 1 || order > 4) throw std::invalid_argument("recon2d: order must be 1..4");
  require_zero_above(order, edges, curl);

  Recon2D r;
  r.order = order;
  r.edges = edges;
  r.curl = curl;
  if (order == 1) return r;

  const double sdx = edges.xb.d1 - edges.xt.d1;    // x-slope difference, bottom-top
  const double sdy = edges.yl.d1 - edges.yr.d1;    // y-slope difference, left-right
  if (order == 2) {
    r.a_yy = (sdy + curl.dy) / 8.0;
    r.b_xx = (sdx - curl.dx) / 8.0;
    return r;
  }

  const double sdxx = edges.xb.d2 - edges.xt.d2;
  const double sdyy = edges.yl.d2 - edges.yr.d2;
  r.a_yyy = (sdyy + curl.dyy) / 12.0;
  r.b_xxx = (sdxx - curl.dxx) / 12.0;
  if (order == 3) {
    r.a_yy = (sdy + curl.dy) / 8.0;
    r.b_xx = (sdx - curl.dx) / 8.0;
    // symmetric split of the one free direction (only the difference is fixed)
    r.a_xyy = curl.dxy / 16.0;
    r.b_xxy = -curl.dxy / 16.0;
    return r;
  }

  // order 4
  const double sdxxx = edges.xb.d3 - edges.xt.d3;
  const double sdyyy = edges.yl.d3 - edges.yr.d3;
  r.a_yyyy = (sdyyy + curl.dyyy) / 16.0;
  r.b_xxxx = (sdxxx - curl.dxxx) / 16.0;
  r.a_xxy = curl.dxxy / 8.0;
  r.b_xyy = -curl.dxyy / 8.0;
  r.a_yy = (sdy + curl.dy) / 8.0 - r.a_yyyy / 20.0 - r.a_xxy / 12.0;
  r.b_xx = (sdx - curl.dx) / 8.0 - r.b_xxxx / 20.0 - r.b_xyy / 12.0;

  const auto [m10, m9] = zone_modes.value_or(std::pair<double, double>{0.0, 0.0});
  r.vx_m10 = m10;
  r.vy_m9 = m9;
  const double vbar = -35.0 * (m10 + m9) / 132.0;
  if (closure == O4Closure::ExactCurl) {
    r.a_xyy = vbar + curl.dxy / 8.0;
    r.b_xxy = vbar - curl.dxy / 8.0;
    r.a_xyyy = -2.0 * r.b_xxy;
    r.b_xxyy = -2.0 * r.a_xyy;
  } else {
    const double d = (25.0 * curl.dxy - 70.0 * m10 + 70.0 * m9) / 384.0;
    r.a_xyy = vbar + d;
    r.b_xxy = vbar - d;
    r.a_xyyy = 7.0 * m10 + 56.0 / 5.0 * r.a_xyy;
    r.b_xxyy = 7.0 * m9 + 56.0 / 5.0 * r.b_xxy;
  }
  // leftover quartic curl (identical coefficient on x*L3(y) and y*L3(x))
  r.curl_q4 = 16.0 * r.a_xyyy + 32.0 * r.b_xxy;
  return r;
}

std::pair<double, double> Recon2D::eval(double x, double y) const {
  check_domain(x, y);
  double vx = edge_poly(edges.xb, x) * (0.5 - y) + edge_poly(edges.xt, x) * (0.5 + y);
  double vy = edge_poly(edges.yl, y) * (0.5 - x) + edge_poly(edges.yr, y) * (0.5 + x);
  if (order >= 2) {
    vx += a_yy * q2(y);
    vy += b_xx * q2(x);
  }
  if (order >= 3) {
    vx += a_yyy * y * q2(y);
    vy += b_xxx * x * q2(x);
  }
  if (order == 3) {
    vx += a_xyy * x * q2(y);
    vy += b_xxy * y * q2(x);
  }
  if (order >= 4) {
    vx += a_yyyy * y * y * q2(y) + a_xxy * x * x * q2(y) + a_xyyy * x * y * y * q2(y) +
          a_xyy * x * q2(x) * q2(y);
    vy += b_xxxx * x * x * q2(x) + b_xyy * y * y * q2(x) + b_xxyy * y * x * x * q2(x) +
          b_xxy * y * q2(y) * q2(x);
  }
  return {vx, vy};
}

double Recon2D::curl_at(double x, double y) const {
  check_domain(x, y);
  // d(V^y)/dx: the edge blend differentiates to the left/right difference
  double dvy_dx = edge_poly(edges.yr, y) - edge_poly(edges.yl, y);
  // d(V^x)/dy
  double dvx_dy = edge_poly(edges.xt, x) - edge_poly(edges.xb, x);
  if (order >= 2) {
    dvy_dx += b_xx * dq2(x);
    dvx_dy += a_yy * dq2(y);
  }
  if (order >= 3) {
    dvy_dx += b_xxx * (q2(x) + x * dq2(x));
    dvx_dy += a_yyy * (q2(y) + y * dq2(y));
  }
  if (order == 3) {
    dvy_dx += b_xxy * y * dq2(x);
    dvx_dy += a_xyy * x * dq2(y);
  }
  if (order >= 4) {
    dvy_dx += b_xxxx * x * (2.0 * q2(x) + x * dq2(x)) + b_xyy * y * y * dq2(x) +
              b_xxyy * y * (2.0 * x * q2(x) + x * x * dq2(x)) +
              b_xxy * y * q2(y) * dq2(x);
    dvx_dy += a_yyyy * y * (2.0 * q2(y) + y * dq2(y)) + a_xxy * x * x * dq2(y) +
              a_xyyy * x * y * (2.0 * q2(y) + y * dq2(y)) +
              a_xyy * x * q2(x) * dq2(y);
  }
  return dvy_dx - dvx_dy;
}

double Recon2D::target_curl(double x, double y) const {
  double t = edges.circulation();
  if (order >= 2) t += curl.dx * x + curl.dy * y;
  if (order >= 3) t += curl.dxx * leg(2, x) + curl.dyy * leg(2, y) + curl.dxy * x * y;
  if (order >= 4)
    t += curl.dxxx * leg(3, x) + curl.dyyy * leg(3, y) + curl.dxxy * y * leg(2, x) +
         curl.dxyy * x * leg(2, y) + curl_q4 * (x * leg(3, y) + y * leg(3, x));
  return t;
}

std::pair<double, double> zone_average2d(const EdgeMoments2D& edges,
                                         const CurlMoments2D& curl) {
  const double avx =
      0.5 * (edges.xb.avg + edges.xt.avg) + (edges.yl.d1 - edges.yr.d1 + curl.dy) / 12.0;
  const double avy =
      0.5 * (edges.yl.avg + edges.yr.avg) + (edges.xb.d1 - edges.xt.d1 - curl.dx) / 12.0;
  return {avx, avy};
}

std::pair<double, double> zone_modes_from_averages(const double avx[9],
                                                   const double avy[9]) {
  auto at = [](const double* a, int ix, int jy) { return a[(jy + 1) * 3 + (ix + 1)]; };
  // mixed third moment stencils, exact through total degree 4
  const double m10 = 0.25 * (at(avx, 1, 1) - at(avx, -1, 1) + at(avx, 1, -1) -
                             at(avx, -1, -1)) -
                     0.5 * (at(avx, 1, 0) - at(avx, -1, 0));
  const double m9 = 0.25 * (at(avy, 1, 1) - at(avy, 1, -1) + at(avy, -1, 1) -
                            at(avy, -1, -1)) -
                    0.5 * (at(avy, 0, 1) - at(avy, 0, -1));
  return {m10, m9};
}

CurlMoments2D circulation_moments_fv(int order, const double* window, int r) {
  if (order < 2 || order > 4)
    throw std::invalid_argument("circulation_moments_fv: order must be 2..4");
  if (r < weno::radius(order))
    throw std::invalid_argument("circulation_moments_fv: stencil too small");
  const int w = 2 * r + 1;
  const double* center = window + r * w + r;
  CurlMoments2D c;
  const auto mx = weno::moments(order, center, 1);
  const auto my = weno::moments(order, center, w);
  c.dx = mx.d1;
  c.dy = my.d1;
  if (order >= 3) {
    c.dxx = mx.d2;
    c.dyy = my.d2;
    // cross moments from row-wise x-moments differenced in y
    double rowd1[5], rowd2[5];
    const int span = weno::radius(order);
    for (int j = -span; j <= span; ++j) {
      const auto rm = weno::moments(order, center + j * w, 1);
      rowd1[j + span] = rm.d1;
      rowd2[j + span] = rm.d2;
    }
    const auto cross1 = weno::moments(order == 4 ? 3 : 2, rowd1 + span, 1);
    c.dxy = cross1.d1;
    if (order == 4) {
      c.dxxx = mx.d3;
      c.dyyy = my.d3;
      c.dxyy = cross1.d2;
      const auto cross2 = weno::moments(2, rowd2 + span, 1);
      c.dxxy = cross2.d1;
    }
  }
  return c;
}

}  // namespace curlmesh::recon2d
