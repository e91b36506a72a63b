//! \file curlmesh_main.cpp
//  \brief command-line harness: reconstruction verification, prolongation
//         tables, stability scans and the model-system vortex runs.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "curlmesh/csv.hpp"
#include "curlmesh/gpr.hpp"
#include "curlmesh/parallel.hpp"
#include "curlmesh/prolong.hpp"
#include "curlmesh/recon2d.hpp"
#include "curlmesh/recon3d.hpp"
#include "curlmesh/scheme.hpp"

namespace {

using namespace curlmesh;

struct Common {
  std::uint64_t seed = 0x5EED;
  std::string out = ".";
  int threads = 0;
  std::string config_text;  // canonical text for the CSV hash line
};

std::string out_path(const Common& c, const std::string& name) {
  std::filesystem::create_directories(c.out);
  return (std::filesystem::path(c.out) / name).string();
}

double urand(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

int run_recon2d(const Common& c, int order, int trials, const std::string& closure) {
  std::mt19937_64 rng(c.seed);
  const auto cl = closure == "exact" ? recon2d::O4Closure::ExactCurl
                                     : recon2d::O4Closure::LeastSquares;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    recon2d::EdgeMoments2D e;
    for (auto* ed : {&e.xb, &e.xt, &e.yl, &e.yr}) {
      ed->avg = urand(rng);
      if (order >= 2) ed->d1 = urand(rng);
      if (order >= 3) ed->d2 = urand(rng);
      if (order >= 4) ed->d3 = urand(rng);
    }
    recon2d::CurlMoments2D cm;
    if (order >= 2) {
      cm.dx = urand(rng);
      cm.dy = urand(rng);
    }
    if (order >= 3) {
      cm.dxx = urand(rng);
      cm.dyy = urand(rng);
      cm.dxy = urand(rng);
    }
    if (order >= 4) {
      cm.dxxx = urand(rng);
      cm.dyyy = urand(rng);
      cm.dxxy = urand(rng);
      cm.dxyy = urand(rng);
    }
    std::optional<std::pair<double, double>> zm;
    if (order == 4) zm = std::pair{urand(rng), urand(rng)};
    const auto r = recon2d::reconstruct2d(order, e, cm, zm, cl);
    for (int p = 0; p < 25; ++p) {
      const double x = 0.5 * urand(rng), y = 0.5 * urand(rng);
      worst = std::max(worst, std::abs(r.curl_at(x, y) - r.target_curl(x, y)));
    }
  }
  std::cout << "recon-verify-2d order " << order << ": max curl-identity residual "
            << worst << "\n";
  return worst <= 1e-13 * 2.0 ? 0 : 1;  // scale: inputs are O(1)
}

int run_recon3d(const Common& c, int order, int trials) {
  std::mt19937_64 rng(c.seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (int modei = 0; modei < 2; ++modei) {
      const auto mode =
          modei ? recon3d::Mode3D::CurlPreserving : recon3d::Mode3D::CurlFree;
      recon3d::EdgeMoments3D e;
      for (int a = 0; a < 3; ++a)
        for (int l = 1; l <= 4; ++l) {
          e.at(a, l).avg = urand(rng);
          if (order >= 2) e.at(a, l).d1 = urand(rng);
          if (order >= 3) e.at(a, l).d2 = urand(rng);
        }
      recon3d::CurlMoments3D cm;
      if (mode == recon3d::Mode3D::CurlPreserving) {
        if (order >= 2) {
          cm.dy_rx = urand(rng);
          cm.dz_rx = urand(rng);
          cm.dx_ry = urand(rng);
          cm.dz_ry = urand(rng);
          cm.dx_rz = urand(rng);
          cm.dy_rz = urand(rng);
        }
        if (order >= 3) {
          cm.dyy_rx = urand(rng);
          cm.dzz_rx = urand(rng);
          cm.dxx_ry = urand(rng);
          cm.dzz_ry = urand(rng);
          cm.dxx_rz = urand(rng);
          cm.dyy_rz = urand(rng);
          cm.dxy_rx = urand(rng);
          cm.dyz_rx = urand(rng);
          cm.dxz_rx = urand(rng);
          cm.dxy_ry = urand(rng);
          cm.dyz_ry = urand(rng);
          cm.dxz_ry = urand(rng);
          cm.dxy_rz = urand(rng);
          cm.dyz_rz = urand(rng);
          cm.dxz_rz = urand(rng);
        }
      }
      const auto r = recon3d::reconstruct3d(order, e, cm, mode);
      for (int p = 0; p < 50; ++p) {
        const double x = 0.5 * urand(rng), y = 0.5 * urand(rng), z = 0.5 * urand(rng);
        const auto cv = r.curl_at(x, y, z);
        const auto tv = r.target_curl(x, y, z);
        for (int d = 0; d < 3; ++d)
          worst = std::max(worst, std::abs(cv[d] - tv[d]));
      }
    }
  }
  std::cout << "recon-verify-3d order " << order << ": max curl-identity residual "
            << worst << "\n";
  return worst <= 1e-13 * 4.0 ? 0 : 1;
}

int run_prolong_table(const Common& c, const std::string& mode_s, int order,
                      const std::vector<int>& meshes) {
  prolong::ProlongMode mode = prolong::ProlongMode::Naive;
  if (mode_s == "touchup") mode = prolong::ProlongMode::TouchUp;
  else if (mode_s == "exactrecon") mode = prolong::ProlongMode::ExactRecon;
  else if (mode_s != "naive") {
    std::cerr << "unknown mode " << mode_s << "\n";
    return 2;
  }
  csv::Writer wr(out_path(c, "prolong_table.csv"),
                 {"mode", "order", "N_coarse", "L1", "L1_order", "Linf", "Linf_order",
                  "max_circulation"},
                 c.config_text);
  double prev_l1 = 0, prev_linf = 0;
  bool first = true;
  for (int n : meshes) {
    const auto coarse = prolong::init_gradient_field(n);
    const auto fine = prolong::prolong_field(coarse, order, mode);
    // errors of the x-component against the analytic fine-mesh edge field
    const int nf = fine.n;
    const double hf = 1.0 / nf;
    double l1 = 0, linf = 0;
    for (int k = 0; k < nf; ++k)
      for (int j = 0; j < nf; ++j)
        for (int i = 0; i < nf; ++i) {
          const double x = i * hf, y = j * hf, z = k * hf;
          const double exact =
              (prolong::harness_potential(x + hf, y, z) -
               prolong::harness_potential(x, y, z)) / hf;
          const double err = std::abs(fine.ex(i, j, k) - exact);
          l1 += err;
          linf = std::max(linf, err);
        }
    l1 /= double(nf) * nf * nf;
    const double circ = prolong::max_circulation(fine);
    const double l1o = first ? 0.0 : std::log2(prev_l1 / l1);
    const double lio = first ? 0.0 : std::log2(prev_linf / linf);
    wr.row_mixed({mode_s, std::to_string(order), std::to_string(n), csv::Writer::num(l1),
                  csv::Writer::num(l1o), csv::Writer::num(linf), csv::Writer::num(lio),
                  csv::Writer::num(circ)});
    std::cout << mode_s << " O" << order << " " << n << "^3: L1 " << l1 << " (order "
              << l1o << ") Linf " << linf << " circ " << circ << "\n";
    prev_l1 = l1;
    prev_linf = linf;
    first = false;
  }
  return 0;
}

int run_stability_scan(const Common& c, double cfl, int nv, int nk,
                       std::vector<int> wavelengths) {
  const auto rows = scheme::stability_scan(cfl, nv, nk, wavelengths);
  csv::Writer wr(out_path(c, "stability_scan.csv"),
                 {"v_angle", "k_angle", "cells_per_wavelength", "cfl", "spectral_radius"},
                 c.config_text);
  double worst = 0.0;
  for (const auto& r : rows) {
    wr.row({r.v_angle, r.k_angle, double(r.cells_per_wavelength), r.cfl, r.radius});
    worst = std::max(worst, r.radius);
  }
  std::cout << "stability-scan: max spectral radius " << worst << " over " << rows.size()
            << " modes\n";
  return worst <= 1.0 + 1e-12 ? 0 : 1;
}

int run_vortex_convergence(const Common& c, const gpr::ModelParams& par,
                           const std::vector<int>& orders, const std::vector<int>& meshes,
                           double tend) {
  const auto rows = gpr::convergence_study(par, orders, meshes, tend);
  csv::Writer wr(out_path(c, "vortex_convergence.csv"),
                 {"method", "N", "L1", "L1_order", "Linf", "Linf_order"}, c.config_text);
  int prev_n = 0;
  double prev_l1 = 0, prev_li = 0;
  int prev_order = -1;
  for (const auto& r : rows) {
    const bool cont = r.order == prev_order;
    const double l1o = cont ? std::log(prev_l1 / r.l1) / std::log(double(r.n) / prev_n) : 0;
    const double lio = cont ? std::log(prev_li / r.linf) / std::log(double(r.n) / prev_n) : 0;
    wr.row_mixed({"Curl-Preserving O" + std::to_string(r.order), std::to_string(r.n),
                  csv::Writer::num(r.l1), csv::Writer::num(l1o), csv::Writer::num(r.linf),
                  csv::Writer::num(lio)});
    std::cout << "O" << r.order << " " << r.n << "^2: L1 " << r.l1 << " (order " << l1o
              << ") Linf " << r.linf << " (order " << lio << ")\n";
    prev_order = r.order;
    prev_n = r.n;
    prev_l1 = r.l1;
    prev_li = r.linf;
  }
  return 0;
}

int run_vortex_longrun(const Common& c, const gpr::ModelParams& par,
                       const std::vector<int>& orders, int n, double tend) {
  csv::Writer wr(out_path(c, "vortex_longrun.csv"),
                 {"order", "time", "curl_error", "energy"}, c.config_text);
  for (int ord : orders) {
    gpr::Solver sv;
    sv.par = par;
    sv.order = ord;
    sv.profile = gpr::stationary_profile(par, 8.0, std::max(20000, 60 * n));
    auto s = sv.init_vortex(n);
    double next_out = 0.0;
    const double every = tend / 100.0;
    sv.run(s, tend, [&](double t, const gpr::FluidState& st) {
      if (t + 1e-12 >= next_out) {
        wr.row({double(ord), t, gpr::curl_error(st), gpr::energy_total(st)});
        next_out += every;
      }
    });
    std::cout << "O" << ord << " longrun done: energy " << gpr::energy_total(s)
              << " curl_err " << gpr::curl_error(s) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured-mesh toolkit for curl constraint-preserving reconstruction"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--out/--threads may follow the subcommand
  Common com;
  app.add_option("--seed", com.seed, "RNG seed");
  app.add_option("--out", com.out, "output directory");
  app.add_option("--threads", com.threads, "worker thread cap (0 = hardware)");
  app.set_config("--config");

  auto* c2 = app.add_subcommand("recon-verify-2d", "2D curl-identity verification");
  int order2 = 4, trials2 = 100;
  std::string closure = "ls";
  c2->add_option("--order", order2)->check(CLI::Range(1, 4));
  c2->add_option("--trials", trials2);
  c2->add_option("--closure", closure, "ls|exact");

  auto* c3 = app.add_subcommand("recon-verify-3d", "3D curl-identity verification");
  int order3 = 3, trials3 = 100;
  c3->add_option("--order", order3)->check(CLI::Range(1, 3));
  c3->add_option("--trials", trials3);

  auto* cp = app.add_subcommand("prolong-table", "AMR prolongation error table");
  std::string pmode = "touchup";
  int porder = 3;
  std::vector<int> pmeshes{16, 32, 64};
  cp->add_option("--mode", pmode, "naive|touchup|exactrecon");
  cp->add_option("--order", porder)->check(CLI::Range(2, 4));
  cp->add_option("--meshes", pmeshes)->delimiter(',');

  auto* cs = app.add_subcommand("stability-scan", "Fourier-symbol stability scan");
  double cfl = 0.45;
  int nv = 16, nk = 64;
  std::vector<int> wls{5, 10, 15};
  cs->add_option("--cfl", cfl);
  cs->add_option("--v-angles", nv);
  cs->add_option("--k-angles", nk);
  cs->add_option("--wavelengths", wls)->delimiter(',');

  gpr::ModelParams par;
  auto add_params = [&](CLI::App* sc) {
    sc->add_option("--gamma", par.gamma);
    sc->add_option("--c0", par.c0);
    sc->add_option("--A", par.A);
    sc->add_option("--R0", par.R0);
    sc->add_option("--sigma", par.sigma);
    sc->add_option("--rho0", par.rho0);
  };
  auto* cv = app.add_subcommand("vortex-convergence", "model-system convergence study");
  std::vector<int> vorders{2, 3}, vmeshes{64, 128};
  double tend = 10.0;
  cv->add_option("--orders", vorders)->delimiter(',');
  cv->add_option("--meshes", vmeshes)->delimiter(',');
  cv->add_option("--tend", tend);
  add_params(cv);

  auto* cl = app.add_subcommand("vortex-longrun", "long-time energy/curl monitoring");
  std::vector<int> lorders{2, 3, 4};
  int ln = 50;
  double ltend = 100.0;
  cl->add_option("--orders", lorders)->delimiter(',');
  cl->add_option("--n", ln);
  cl->add_option("--tend", ltend);
  add_params(cl);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (com.threads == 0) {
    if (const char* env = std::getenv("CURLMESH_THREADS")) com.threads = std::atoi(env);
  }
  if (com.threads > 0) curlmesh::set_max_threads(com.threads);

  {
    std::ostringstream cfg;
    for (int i = 1; i < argc; ++i) cfg << argv[i] << " ";
    cfg << "seed=" << com.seed;
    com.config_text = cfg.str();
  }

  try {
    if (c2->parsed()) return run_recon2d(com, order2, trials2, closure);
    if (c3->parsed()) return run_recon3d(com, order3, trials3);
    if (cp->parsed()) return run_prolong_table(com, pmode, porder, pmeshes);
    if (cs->parsed()) return run_stability_scan(com, cfl, nv, nk, wls);
    if (cv->parsed()) return run_vortex_convergence(com, par, vorders, vmeshes, tend);
    if (cl->parsed()) return run_vortex_longrun(com, par, lorders, ln, ltend);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
