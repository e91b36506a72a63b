#include "curlmesh/scheme.hpp"

#include <cmath>
#include <limits>

#include "curlmesh/parallel.hpp"

namespace curlmesh::scheme {

double AdvectionConfig::dt_bound() const {
  double b = std::numeric_limits<double>::infinity();
  if (vx != 0.0) b = std::min(b, dx / std::abs(vx));
  if (vy != 0.0) b = std::min(b, dy / std::abs(vy));
  if (vz != 0.0) b = std::min(b, dz / std::abs(vz));
  return cfl * b;
}

double EdgeState2D::max_circulation() const {
  double m = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double c = x(i, j) - x(i, j + 1) + y(i + 1, j) - y(i, j);
      m = std::max(m, std::abs(c));
    }
  return m;
}

double EdgeState3D::max_circulation() const {
  double m = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const double cz = x(i, j, k) - x(i, j + 1, k) + y(i + 1, j, k) - y(i, j, k);
        const double cx = y(i, j, k) - y(i, j, k + 1) + z(i, j + 1, k) - z(i, j, k);
        const double cy = z(i, j, k) - z(i + 1, j, k) + x(i, j, k + 1) - x(i, j, k);
        m = std::max({m, std::abs(cx), std::abs(cy), std::abs(cz)});
      }
  return m;
}

double vertex_potential_llf(const EdgeState2D& s, const AdvectionConfig& cfg, int i,
                            int j) {
  const double jxl = s.x(i - 1, j), jxr = s.x(i, j);
  const double jyb = s.y(i, j - 1), jyt = s.y(i, j);
  return 0.5 * cfg.vx * (jxr + jxl) - 0.5 * std::abs(cfg.vx) * (jxr - jxl) +
         0.5 * cfg.vy * (jyt + jyb) - 0.5 * std::abs(cfg.vy) * (jyt - jyb);
}

StepInfo step2d(EdgeState2D& s, const AdvectionConfig& cfg, double dt) {
  StepInfo info;
  info.dt_exceeded_bound = dt > cfg.dt_bound() * (1.0 + 1e-14);
  const int nx = s.nx, ny = s.ny;
  std::vector<double> phi(size_t(nx) * ny);
  par_for(std::int64_t(nx) * ny, [&](std::int64_t t) {
    const int i = int(t % nx), j = int(t / nx);
    phi[t] = vertex_potential_llf(s, cfg, i, j);
  });
  auto at = [&](int i, int j) { return phi[s.idx(i, j)]; };
  EdgeState2D next = s;
  par_for(std::int64_t(nx) * ny, [&](std::int64_t t) {
    const int i = int(t % nx), j = int(t / nx);
    next.x(i, j) = s.x(i, j) - dt / cfg.dx * (at(i + 1, j) - at(i, j));
    next.y(i, j) = s.y(i, j) - dt / cfg.dy * (at(i, j + 1) - at(i, j));
  });
  s = std::move(next);
  return info;
}

StepInfo step2d_transcribed(EdgeState2D& s, const AdvectionConfig& cfg, double dt) {
  StepInfo info;
  info.dt_exceeded_bound = dt > cfg.dt_bound() * (1.0 + 1e-14);
  const int nx = s.nx, ny = s.ny;
  const double ax = std::abs(cfg.vx), ay = std::abs(cfg.vy);
  EdgeState2D next = s;
  par_for(std::int64_t(nx) * ny, [&](std::int64_t t) {
    const int i = int(t % nx), j = int(t / nx);
    {
      const double c = s.x(i, j);
      const double adv = cfg.vx / (2 * cfg.dx) * (s.x(i + 1, j) - s.x(i - 1, j)) +
                         cfg.vy / (2 * cfg.dy) * (s.x(i, j + 1) - s.x(i, j - 1));
      const double dis = ax / (2 * cfg.dx) * (s.x(i + 1, j) - 2 * c + s.x(i - 1, j)) +
                         ay / (2 * cfg.dy) * (s.x(i, j + 1) - 2 * c + s.x(i, j - 1));
      next.x(i, j) = c + dt * (dis - adv);
    }
    {
      const double c = s.y(i, j);
      const double adv = cfg.vx / (2 * cfg.dx) * (s.y(i + 1, j) - s.y(i - 1, j)) +
                         cfg.vy / (2 * cfg.dy) * (s.y(i, j + 1) - s.y(i, j - 1));
      const double dis = ax / (2 * cfg.dx) * (s.y(i + 1, j) - 2 * c + s.y(i - 1, j)) +
                         ay / (2 * cfg.dy) * (s.y(i, j + 1) - 2 * c + s.y(i, j - 1));
      next.y(i, j) = c + dt * (dis - adv);
    }
  });
  s = std::move(next);
  return info;
}

namespace {
inline double vertex_potential3(const EdgeState3D& s, const AdvectionConfig& cfg, int i,
                                int j, int k) {
  const double jxl = s.x(i - 1, j, k), jxr = s.x(i, j, k);
  const double jyl = s.y(i, j - 1, k), jyr = s.y(i, j, k);
  const double jzl = s.z(i, j, k - 1), jzr = s.z(i, j, k);
  return 0.5 * cfg.vx * (jxr + jxl) - 0.5 * std::abs(cfg.vx) * (jxr - jxl) +
         0.5 * cfg.vy * (jyr + jyl) - 0.5 * std::abs(cfg.vy) * (jyr - jyl) +
         0.5 * cfg.vz * (jzr + jzl) - 0.5 * std::abs(cfg.vz) * (jzr - jzl);
}
}  // namespace

StepInfo step3d(EdgeState3D& s, const AdvectionConfig& cfg, double dt) {
  StepInfo info;
  info.dt_exceeded_bound = dt > cfg.dt_bound() * (1.0 + 1e-14);
  const int n = s.n;
  std::vector<double> phi(size_t(n) * n * n);
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    phi[t] = vertex_potential3(s, cfg, i, j, k);
  });
  auto at = [&](int i, int j, int k) { return phi[s.idx(i, j, k)]; };
  EdgeState3D next = s;
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    next.x(i, j, k) = s.x(i, j, k) - dt / cfg.dx * (at(i + 1, j, k) - at(i, j, k));
    next.y(i, j, k) = s.y(i, j, k) - dt / cfg.dy * (at(i, j + 1, k) - at(i, j, k));
    next.z(i, j, k) = s.z(i, j, k) - dt / cfg.dz * (at(i, j, k + 1) - at(i, j, k));
  });
  s = std::move(next);
  return info;
}

StepInfo step3d_transcribed(EdgeState3D& s, const AdvectionConfig& cfg, double dt) {
  StepInfo info;
  info.dt_exceeded_bound = dt > cfg.dt_bound() * (1.0 + 1e-14);
  const int n = s.n;
  const double a[3] = {std::abs(cfg.vx), std::abs(cfg.vy), std::abs(cfg.vz)};
  const double v[3] = {cfg.vx, cfg.vy, cfg.vz};
  const double h[3] = {cfg.dx, cfg.dy, cfg.dz};
  EdgeState3D next = s;
  par_for(std::int64_t(n) * n * n, [&](std::int64_t t) {
    const int i = int(t % n), j = int((t / n) % n), k = int(t / (std::int64_t(n) * n));
    auto upd = [&](auto&& get) {
      const double c = get(0, 0, 0);
      double adv = 0, dis = 0;
      const double px = get(1, 0, 0), mx = get(-1, 0, 0);
      const double py = get(0, 1, 0), my = get(0, -1, 0);
      const double pz = get(0, 0, 1), mz = get(0, 0, -1);
      adv = v[0] / (2 * h[0]) * (px - mx) + v[1] / (2 * h[1]) * (py - my) +
            v[2] / (2 * h[2]) * (pz - mz);
      dis = a[0] / (2 * h[0]) * (px - 2 * c + mx) + a[1] / (2 * h[1]) * (py - 2 * c + my) +
            a[2] / (2 * h[2]) * (pz - 2 * c + mz);
      return c + dt * (dis - adv);
    };
    next.x(i, j, k) = upd([&](int a1, int b, int c2) { return s.x(i + a1, j + b, k + c2); });
    next.y(i, j, k) = upd([&](int a1, int b, int c2) { return s.y(i + a1, j + b, k + c2); });
    next.z(i, j, k) = upd([&](int a1, int b, int c2) { return s.z(i + a1, j + b, k + c2); });
  });
  s = std::move(next);
  return info;
}

Symbol2D fourier_symbol(const AdvectionConfig& cfg, double kx, double ky, double dt) {
  using cd = std::complex<double>;
  const cd I(0.0, 1.0);
  const double tx = 0.5 * kx * cfg.dx, ty = 0.5 * ky * cfg.dy;
  // column: edge-difference factors; row: potential coupling factors
  const cd col[2] = {2.0 * I * std::sin(tx) * dt / cfg.dx,
                     2.0 * I * std::sin(ty) * dt / cfg.dy};
  const cd row[2] = {cfg.vx * std::cos(tx) - I * std::abs(cfg.vx) * std::sin(tx),
                     cfg.vy * std::cos(ty) - I * std::abs(cfg.vy) * std::sin(ty)};
  Symbol2D s;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) s.g[a][b] = (a == b ? 1.0 : 0.0) - col[a] * row[b];
  s.advect_eigenvalue = 1.0 - (col[0] * row[0] + col[1] * row[1]);
  s.radius = std::max(1.0, std::abs(s.advect_eigenvalue));
  return s;
}

std::vector<ScanRow> stability_scan(double cfl, int n_v_angles, int n_k_angles,
                                    const std::vector<int>& wavelengths) {
  std::vector<ScanRow> rows;
  rows.reserve(size_t(n_v_angles) * n_k_angles * wavelengths.size());
  for (int iv = 0; iv < n_v_angles; ++iv) {
    const double va = 0.5 * M_PI * iv / n_v_angles;
    AdvectionConfig cfg;
    cfg.vx = std::cos(va);
    cfg.vy = std::sin(va);
    cfg.cfl = cfl;
    const double dt = cfg.dt_bound();
    for (int ik = 0; ik < n_k_angles; ++ik) {
      const double ka = 2.0 * M_PI * ik / n_k_angles;
      for (int w : wavelengths) {
        const double kmag = 2.0 * M_PI / (w * cfg.dx);
        const auto sym =
            fourier_symbol(cfg, kmag * std::cos(va + ka), kmag * std::sin(va + ka), dt);
        rows.push_back({va, ka, w, cfl, sym.radius});
      }
    }
  }
  return rows;
}

}  // namespace curlmesh::scheme
