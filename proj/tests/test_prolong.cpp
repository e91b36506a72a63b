#include "curlmesh/prolong.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "curlmesh/basis.hpp"
#include "doctest.h"

using namespace curlmesh;
using namespace curlmesh::prolong;

namespace {
std::mt19937_64 rng(0xAB1E);
double ur() { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

// exact quadratic argmin from three samples of a quadratic functional
template <typename F>
double scan_argmin(F&& f, double lo, double hi, int n = 2001) {
  double best = lo, bv = f(lo);
  for (int i = 1; i <= n; ++i) {
    const double s = lo + (hi - lo) * i / n;
    const double v = f(s);
    if (v < bv) {
      bv = v;
      best = s;
    }
  }
  const double d = (hi - lo) / n;
  const double fm = f(best - d), f0 = f(best), fp = f(best + d);
  const double den = fm - 2 * f0 + fp;
  return den > 0 ? best + 0.5 * d * (fm - fp) / den : best;
}
}  // namespace

TEST_CASE("2D touch-up: zeros, fixed point, optimality, constraints") {
  SUBCASE("all-zero inputs") {
    const auto r = touchup2d({});
    CHECK(r.xc1 == 0.0);
    CHECK(r.yc2 == 0.0);
    CHECK(r.alpha == 0.0);
  }
  SUBCASE("constraint-satisfying candidates are reproduced") {
    for (int t = 0; t < 50; ++t) {
      TouchUp2D q;
      q.xb1 = ur(); q.xb2 = ur(); q.xt1 = ur(); q.xt2 = ur();
      q.yl1 = ur(); q.yl2 = ur(); q.yr1 = ur(); q.yr2 = ur();
      q.rz1 = ur(); q.rz2 = ur(); q.rz3 = ur();
      // pick interior values satisfying the three constraints, then use them
      // as the candidates
      const double xc1 = ur(), yc1 = q.rz1 - q.xb1 + q.yl1 + xc1;
      const double xc2 = q.xb2 + q.yr1 - yc1 - q.rz2;
      const double yc2 = q.rz3 + q.xt1 + q.yl2 - xc1;
      q.fxc1 = xc1; q.fxc2 = xc2; q.fyc1 = yc1; q.fyc2 = yc2;
      const auto r = touchup2d(q);
      CHECK(r.xc1 == doctest::Approx(xc1).epsilon(1e-12));
      CHECK(r.xc2 == doctest::Approx(xc2).epsilon(1e-12));
      CHECK(r.yc1 == doctest::Approx(yc1).epsilon(1e-12));
      CHECK(r.yc2 == doctest::Approx(yc2).epsilon(1e-12));
    }
  }
  SUBCASE("random inputs: exact constraints and brute-force alpha") {
    for (int t = 0; t < 200; ++t) {
      TouchUp2D q;
      q.xb1 = ur(); q.xb2 = ur(); q.xt1 = ur(); q.xt2 = ur();
      q.yl1 = ur(); q.yl2 = ur(); q.yr1 = ur(); q.yr2 = ur();
      q.fxc1 = ur(); q.fxc2 = ur(); q.fyc1 = ur(); q.fyc2 = ur();
      q.rz1 = ur(); q.rz2 = ur(); q.rz3 = ur();
      const auto r = touchup2d(q);
      // the three prescribed fine-zone circulations hold exactly
      CHECK(q.xb1 - q.yl1 - r.xc1 + r.yc1 == doctest::Approx(q.rz1).epsilon(1e-13));
      CHECK(q.xb2 + q.yr1 - r.xc2 - r.yc1 == doctest::Approx(q.rz2).epsilon(1e-13));
      CHECK(-q.xt1 - q.yl2 + r.xc1 + r.yc2 == doctest::Approx(q.rz3).epsilon(1e-13));
      // and the fourth follows from the boundary values (telescoping)
      const double rz4 = r.xc2 - q.xt2 + q.yr2 - r.yc2;
      const double coarse = (q.xb1 + q.xb2) - (q.xt1 + q.xt2) + (q.yr1 + q.yr2) -
                            (q.yl1 + q.yl2);
      CHECK(q.rz1 + q.rz2 + q.rz3 + rz4 == doctest::Approx(coarse).epsilon(1e-12));
      // alpha minimizes the distance to the candidates
      auto ls = [&](double a) {
        TouchUp2D q2 = q;
        const auto rr = touchup2d(q2);
        const double xc1 = rr.xc1 - 0.5 * (a - rr.alpha);
        const double xc2 = rr.xc2 + 0.5 * (a - rr.alpha);
        const double yc1 = rr.yc1 - 0.5 * (a - rr.alpha);
        const double yc2 = rr.yc2 + 0.5 * (a - rr.alpha);
        return (xc1 - q.fxc1) * (xc1 - q.fxc1) + (xc2 - q.fxc2) * (xc2 - q.fxc2) +
               (yc1 - q.fyc1) * (yc1 - q.fyc1) + (yc2 - q.fyc2) * (yc2 - q.fyc2);
      };
      CHECK(r.alpha == doctest::Approx(scan_argmin(ls, -10, 10)).epsilon(1e-10));
    }
  }
}

TEST_CASE("3D touch-up: zeros, fixed point, optimality, consistency") {
  auto random_inputs = [&]() {
    TouchUp3D q;
    for (auto* arr : {&q.xf_ym, &q.xf_yp, &q.xf_zm, &q.xf_zp, &q.yf_zm, &q.yf_zp,
                      &q.yf_xm, &q.yf_xp, &q.zf_xm, &q.zf_xp, &q.zf_ym, &q.zf_yp})
      for (double& v : *arr) v = ur();
    for (double& v : q.cand) v = ur();
    for (double& v : q.targets) v = ur();
    return q;
  };
  SUBCASE("all-zero inputs") {
    const auto r = touchup3d({});
    for (double v : r.v) CHECK(v == 0.0);
    CHECK(r.beta == 0.0);
  }
  SUBCASE("random inputs: the 5 independent targets are met exactly") {
    for (int t = 0; t < 200; ++t) {
      const auto q = random_inputs();
      const auto r = touchup3d(q);
      // documented free-face order: z(-,-), z(+,-), x(-,+), x(+,+), y(-,+)
      const int free[5] = {0, 1, 6, 7, 10};
      for (int f = 0; f < 5; ++f)
        CHECK(r.achieved[free[f]] == doctest::Approx(q.targets[f]).epsilon(1e-12));
      // beta minimizes the distance to the candidates over the kernel line
      static const double ker[6] = {1, -1, 1, -1, 1, -1};
      auto ls = [&](double s) {
        double acc = 0;
        for (int i = 0; i < 6; ++i) {
          const double v = r.v[i] + ker[i] * (s - r.beta);
          acc += (v - q.cand[i]) * (v - q.cand[i]);
        }
        return acc;
      };
      CHECK(r.beta == doctest::Approx(scan_argmin(ls, -10, 10)).epsilon(1e-10));
      // moving along the kernel never changes any internal circulation
      std::array<double, 6> shifted;
      for (int i = 0; i < 6; ++i) shifted[i] = r.v[i] + ker[i] * 0.37;
      const auto c2 = internal_circulations(q, shifted);
      for (int f = 0; f < 12; ++f)
        CHECK(c2[f] == doctest::Approx(r.achieved[f]).epsilon(1e-12));
    }
  }
  SUBCASE("constraint-satisfying candidates are reproduced") {
    for (int t = 0; t < 50; ++t) {
      auto q = random_inputs();
      const auto r0 = touchup3d(q);
      q.cand = r0.v;  // candidates now satisfy every circulation target
      for (int i = 0; i < 5; ++i) q.targets[i] = r0.achieved[i == 4 ? 10 : (i >= 2 ? i + 4 : i)];
      const auto r = touchup3d(q);
      for (int i = 0; i < 6; ++i) CHECK(r.v[i] == doctest::Approx(r0.v[i]).epsilon(1e-12));
    }
  }
  SUBCASE("reduce_targets accepts the implied set and rejects rogue ones") {
    const auto q = random_inputs();
    const auto r = touchup3d(q);
    auto full = r.achieved;
    CHECK_NOTHROW(reduce_targets(q, full));
    full[3] += 0.1;
    CHECK_THROWS_AS(reduce_targets(q, full), std::invalid_argument);
  }
}

TEST_CASE("gradient initialization is circulation-free") {
  const auto f = init_gradient_field(12);
  double scale = 0;
  for (double v : f.x) scale = std::max(scale, std::abs(v));
  CHECK(max_circulation(f) < 1e-13 * scale);
  const auto fc = init_gradient_field(8, [](double, double, double) { return 3.0; });
  for (double v : fc.x) CHECK(v == 0.0);
}

TEST_CASE("edge values are exact line means; midpoint rule is second order") {
  auto phi = [](double x, double y, double z) {
    return std::sin(2 * M_PI * x) * std::cos(2 * M_PI * y) + 0.3 * std::sin(2 * M_PI * z);
  };
  auto dphidx = [&](double x, double y, double z) {
    return 2 * M_PI * std::cos(2 * M_PI * x) * std::cos(2 * M_PI * y) + 0.0 * z;
  };
  auto line_mean_err = [&](int n) {
    const double h = 1.0 / n;
    const auto f = init_gradient_field(n, phi);
    // composite Gauss-5 line quadrature of dphi/dx over one edge
    double acc = 0;
    const int i = n / 3, j = n / 4, k = n / 2;
    for (int g = 0; g < 5; ++g)
      acc += Gauss<5>::w[g] * dphidx((i + 0.5 + Gauss<5>::x[g]) * h, j * h, k * h);
    return std::abs(f.ex(i, j, k) - acc);
  };
  CHECK(line_mean_err(32) < 1e-9);  // equal up to the quadrature's own error
  auto mid_err = [&](int n) {
    const double h = 1.0 / n;
    const auto f = init_gradient_field(n, phi);
    const int i = n / 3, j = n / 4, k = n / 2;
    return std::abs(f.ex(i, j, k) - dphidx((i + 0.5) * h, j * h, k * h));
  };
  const double slope = std::log2(mid_err(16) / mid_err(32));
  CHECK(slope > 1.6);  // midpoint-rule character of the vertex difference
}

TEST_CASE("max_circulation flags a single perturbed edge") {
  EdgeField3 f(6);
  f.ex(2, 3, 1) += 1e-3;
  CHECK(max_circulation(f) == doctest::Approx(1e-3));
}

TEST_CASE("prolongation pipeline at a small coarse size") {
  const int n = 8;
  const auto coarse = init_gradient_field(n);
  double scale = 0;
  for (double v : coarse.x) scale = std::max(scale, std::abs(v));

  for (int order : {2, 3, 4}) {
    const auto naive = prolong_field(coarse, order, ProlongMode::Naive);
    const auto touched = prolong_field(coarse, order, ProlongMode::TouchUp);
    // type-1 fine edges never change
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          CHECK(touched.ex(2 * i, 2 * j, 2 * k) == naive.ex(2 * i, 2 * j, 2 * k));
          CHECK(touched.ex(2 * i + 1, 2 * j, 2 * k) == naive.ex(2 * i + 1, 2 * j, 2 * k));
        }
    // conservativity of the type-1 split
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          CHECK(0.5 * (naive.ex(2 * i, 2 * j, 2 * k) + naive.ex(2 * i + 1, 2 * j, 2 * k)) ==
                doctest::Approx(coarse.ex(i, j, k)).epsilon(1e-13));
    // the touch-up restores the constraint; the naive field violates it
    CHECK(max_circulation(touched) < 1e-12 * scale);
    CHECK(max_circulation(naive) > 1e-6 * scale);
  }
  // exact curl-free reconstruction path restores the constraint directly
  for (int order : {2, 3}) {
    const auto er = prolong_field(coarse, order, ProlongMode::ExactRecon);
    CHECK(max_circulation(er) < 1e-12 * scale);
  }
}

TEST_CASE("touch-up is a fixed point on constraint-satisfying candidates") {
  // a potential varying along x only: the naive FV prolongation is already
  // circulation-free, so the touch-up must reproduce it
  const int n = 8;
  auto pot = [](double x, double, double) { return std::sin(2 * M_PI * x); };
  const auto coarse = init_gradient_field(n, pot);
  const auto naive = prolong_field(coarse, 3, ProlongMode::Naive);
  const auto touched = prolong_field(coarse, 3, ProlongMode::TouchUp);
  CHECK(max_circulation(naive) < 1e-13);
  for (size_t i = 0; i < naive.x.size(); ++i) {
    CHECK(std::abs(naive.x[i] - touched.x[i]) < 2e-14);
    CHECK(std::abs(naive.y[i] - touched.y[i]) < 2e-14);
    CHECK(std::abs(naive.z[i] - touched.z[i]) < 2e-14);
  }
}

TEST_CASE("the per-face 2D step inside the 3D pipeline matches standalone touchup2d") {
  const int n = 4;
  const auto coarse = init_gradient_field(n);
  const auto naive = prolong_field(coarse, 3, ProlongMode::Naive);
  const auto touched = prolong_field(coarse, 3, ProlongMode::TouchUp);
  // reconstruct the z-face problem at (i,j,K) = (1,2,1) from the naive field
  const int i = 1, j = 2, K = 1;
  TouchUp2D q;
  q.xb1 = naive.ex(2 * i, 2 * j, 2 * K);
  q.xb2 = naive.ex(2 * i + 1, 2 * j, 2 * K);
  q.xt1 = naive.ex(2 * i, 2 * j + 2, 2 * K);
  q.xt2 = naive.ex(2 * i + 1, 2 * j + 2, 2 * K);
  q.yl1 = naive.ey(2 * i, 2 * j, 2 * K);
  q.yl2 = naive.ey(2 * i, 2 * j + 1, 2 * K);
  q.yr1 = naive.ey(2 * i + 2, 2 * j, 2 * K);
  q.yr2 = naive.ey(2 * i + 2, 2 * j + 1, 2 * K);
  q.fxc1 = naive.ex(2 * i, 2 * j + 1, 2 * K);
  q.fxc2 = naive.ex(2 * i + 1, 2 * j + 1, 2 * K);
  q.fyc1 = naive.ey(2 * i + 1, 2 * j, 2 * K);
  q.fyc2 = naive.ey(2 * i + 1, 2 * j + 1, 2 * K);
  const auto r = touchup2d(q);
  CHECK(r.xc1 == touched.ex(2 * i, 2 * j + 1, 2 * K));
  CHECK(r.xc2 == touched.ex(2 * i + 1, 2 * j + 1, 2 * K));
  CHECK(r.yc1 == touched.ey(2 * i + 1, 2 * j, 2 * K));
  CHECK(r.yc2 == touched.ey(2 * i + 1, 2 * j + 1, 2 * K));
}

TEST_CASE("prolongation accuracy improves at the design rate") {
  // quick two-mesh slope check; the full table is in the acceptance suite
  auto l1err = [](int n, int order, ProlongMode mode) {
    const auto fine = prolong_field(init_gradient_field(n), order, mode);
    const int nf = fine.n;
    const double hf = 1.0 / nf;
    double l1 = 0;
    for (int k = 0; k < nf; ++k)
      for (int j = 0; j < nf; ++j)
        for (int i = 0; i < nf; ++i) {
          const double x = i * hf, y = j * hf, z = k * hf;
          const double exact =
              (harness_potential(x + hf, y, z) - harness_potential(x, y, z)) / hf;
          l1 += std::abs(fine.ex(i, j, k) - exact);
        }
    return l1 / (double(nf) * nf * nf);
  };
  const double e16 = l1err(16, 3, ProlongMode::TouchUp);
  const double e32 = l1err(32, 3, ProlongMode::TouchUp);
  CHECK(std::log2(e16 / e32) > 2.6);
}
