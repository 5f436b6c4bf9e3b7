// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "proxdual/apps.hpp"
#include "proxdual/io.hpp"
#include "proxdual/opnorm.hpp"
#include "proxdual/oracle.hpp"

namespace proxdual::io {

namespace {

struct SolveFlags {
  int max_iter = 10000;
  double tol = 1e-9;
  double tol_gap = -1.0;
  double gamma = -1.0;
  double lambda = -1.0;
  std::string trace_path;
  bool quiet = false;
  bool verbose = false;
};

void add_solver_options(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--max-iter", f.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  cmd->add_option("--tol", f.tol, "Relative iterate-change tolerance");
  cmd->add_option("--tol-gap", f.tol_gap, "Duality-gap tolerance (when objectives evaluable)");
  cmd->add_option("--gamma", f.gamma, "Constant step size (default 1.9/|L|^2)");
  cmd->add_option("--lambda", f.lambda, "Constant relaxation in ]0,1]");
  cmd->add_option("--trace", f.trace_path, "Write per-iteration trace CSV here");
  cmd->add_flag("--quiet", f.quiet, "Suppress the summary line");
  cmd->add_flag("--verbose", f.verbose, "Print periodic progress lines");
}

DualFBConfig to_config(const SolveFlags& f) {
  DualFBConfig cfg;
  cfg.max_iter = f.max_iter;
  cfg.tol_iterate = f.tol;
  if (f.tol_gap >= 0.0) cfg.tol_gap = f.tol_gap;
  if (f.gamma > 0.0) {
    double g = f.gamma;
    cfg.gamma = [g](int) { return g; };
  }
  if (f.lambda > 0.0) {
    double l = f.lambda;
    cfg.lambda = [l](int) { return l; };
  }
  return cfg;
}

int finish_solve(const SolveResult& res, const SolveFlags& flags) {
  if (!flags.trace_path.empty()) write_trace_csv(flags.trace_path, res.trace);
  if (flags.verbose) {
    for (size_t i = 0; i < res.trace.size(); i += 50)
      std::cout << "n=" << res.trace[i].n << " change=" << res.trace[i].iterate_change
                << (res.trace[i].gap ? " gap=" + std::to_string(*res.trace[i].gap) : "") << "\n";
  }
  if (!flags.quiet) {
    std::cout << "reason=" << to_string(res.reason) << " iterations=" << res.iterations;
    if (!res.trace.empty() && res.trace.back().gap) std::cout << " gap=" << *res.trace.back().gap;
    std::cout << "\n";
  }
  if (res.reason == StopReason::IterateTol || res.reason == StopReason::GapTol) return 0;
  std::cerr << "warning: stopped by " << to_string(res.reason)
            << " before reaching tolerance\n";
  return 2;
}

struct SetSpec {
  std::string kind = "whole";
  std::vector<double> lo, hi, center, point, normal;
  double radius = 1.0;
  double eta = 0.0;
};

void add_set_options(CLI::App* cmd, const std::string& prefix, SetSpec& s) {
  cmd->add_option("--" + prefix + "-kind", s.kind, "Set kind for " + prefix)
      ->check(CLI::IsMember(
          {"whole", "box", "l2ball", "linfball", "l1ball", "nonneg", "singleton", "halfspace"}));
  cmd->add_option("--" + prefix + "-lo", s.lo, "Box lower bounds");
  cmd->add_option("--" + prefix + "-hi", s.hi, "Box upper bounds");
  cmd->add_option("--" + prefix + "-center", s.center, "Ball center");
  cmd->add_option("--" + prefix + "-radius", s.radius, "Ball radius");
  cmd->add_option("--" + prefix + "-point", s.point, "Singleton point");
  cmd->add_option("--" + prefix + "-normal", s.normal, "Halfspace normal");
  cmd->add_option("--" + prefix + "-offset", s.eta, "Halfspace offset");
}

ConvexSetR build_set(const SetSpec& s, int dim, const std::string& prefix) {
  if (s.kind == "whole") return ConvexSetR::whole_space(dim);
  if (s.kind == "nonneg") return ConvexSetR::nonneg_orthant(dim);
  if (s.kind == "linfball") return ConvexSetR::linf_ball(dim, s.radius);
  if (s.kind == "l1ball") return ConvexSetR::l1_ball(dim, s.radius);
  if (s.kind == "box") {
    if (static_cast<int>(s.lo.size()) != dim || static_cast<int>(s.hi.size()) != dim)
      throw InvalidInputError(prefix + ": box bounds must have dimension " + std::to_string(dim));
    return ConvexSetR::box(VecR::from(s.lo), VecR::from(s.hi));
  }
  if (s.kind == "l2ball") {
    VecR c = s.center.empty() ? VecR(dim) : VecR::from(s.center);
    if (c.size() != dim)
      throw InvalidInputError(prefix + ": center must have dimension " + std::to_string(dim));
    return ConvexSetR::l2_ball(c, s.radius);
  }
  if (s.kind == "singleton") {
    if (static_cast<int>(s.point.size()) != dim)
      throw InvalidInputError(prefix + ": point must have dimension " + std::to_string(dim));
    return ConvexSetR::singleton(VecR::from(s.point));
  }
  if (s.kind == "halfspace") {
    if (static_cast<int>(s.normal.size()) != dim)
      throw InvalidInputError(prefix + ": normal must have dimension " + std::to_string(dim));
    return ConvexSetR::halfspace(VecR::from(s.normal), s.eta);
  }
  throw InvalidInputError(prefix + ": unknown set kind " + s.kind);
}

struct PhiSpec {
  std::string kind = "power";
  double p = 1.0;
  double alpha = 1.0;
  double omega = 1.0;
  double tau = 1.0;
};

void add_phi_options(CLI::App* cmd, const std::string& prefix, PhiSpec& s) {
  cmd->add_option("--" + prefix + "-kind", s.kind, "Penalty kind for " + prefix)
      ->check(CLI::IsMember({"power", "neglog", "logbarrier", "huber"}));
  cmd->add_option("--" + prefix + "-p", s.p, "Power exponent (1, 4/3, 3/2, 2, 3, 4)");
  cmd->add_option("--" + prefix + "-alpha", s.alpha, "Weight");
  cmd->add_option("--" + prefix + "-omega", s.omega, "Width parameter");
  cmd->add_option("--" + prefix + "-tau", s.tau, "Huber curvature");
}

ScalarFun build_phi(const PhiSpec& s) {
  if (s.kind == "power") return ScalarFun::power(s.p, s.alpha);
  if (s.kind == "neglog") return ScalarFun::neg_log(s.alpha);
  if (s.kind == "logbarrier") return ScalarFun::log_barrier(s.omega);
  if (s.kind == "huber") return ScalarFun::huber(s.omega, s.tau);
  throw InvalidInputError("unknown penalty kind " + s.kind);
}

LinOp operator_from_option(const std::string& path, int dim_fallback) {
  if (path.empty()) return identity_op(dim_fallback);
  return from_rows(read_matrix_csv(path));
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
  CLI::App app{"proxdual: dual splitting for composite least-distance problems"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI-style config file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  // tv
  auto* tv = app.add_subcommand("tv", "Total-variation image denoising");
  std::string tv_in, tv_out, tv_p = "2";
  double tv_mu = 0.1;
  SolveFlags tv_flags;
  tv->add_option("--input", tv_in, "Input PGM (P2 or P5)")->required();
  tv->add_option("--output", tv_out, "Output PGM")->required();
  tv->add_option("--mu", tv_mu, "Regularization weight")->check(CLI::PositiveNumber);
  tv->add_option("--p", tv_p, "Pixel norm for tv")->check(CLI::IsMember({"1", "2", "inf"}));
  add_solver_options(tv, tv_flags);

  // dict
  auto* dict = app.add_subcommand("dict", "Denoising over a dictionary");
  std::string dict_in, dict_mat, dict_out;
  double dict_delta = 0.0;
  PhiSpec dict_phi;
  SolveFlags dict_flags;
  dict->add_option("--input", dict_in, "Observed vector CSV")->required();
  dict->add_option("--dict", dict_mat, "Dictionary CSV, one unit-norm row per atom")->required();
  dict->add_option("--output", dict_out, "Output vector CSV")->required();
  dict->add_option("--delta", dict_delta, "Frame bound (0 = estimate by power iteration)");
  add_phi_options(dict, "phi", dict_phi);
  add_solver_options(dict, dict_flags);

  // bestapprox
  auto* best = app.add_subcommand("bestapprox", "Best approximation under hard constraints");
  std::string ba_z, ba_r, ba_L, ba_out;
  SetSpec ba_C, ba_D;
  SolveFlags ba_flags;
  best->add_option("--z", ba_z, "Reference vector CSV")->required();
  best->add_option("--r", ba_r, "Constraint offset CSV")->required();
  best->add_option("--L", ba_L, "Operator CSV (rows); identity when omitted");
  best->add_option("--output", ba_out, "Output vector CSV")->required();
  add_set_options(best, "c", ba_C);
  add_set_options(best, "d", ba_D);
  add_solver_options(best, ba_flags);

  // softapprox
  auto* soft = app.add_subcommand("softapprox", "Best approximation with soft penalties");
  std::string sa_z, sa_r, sa_L, sa_out;
  SetSpec sa_C, sa_D;
  PhiSpec sa_phi, sa_psi;
  SolveFlags sa_flags;
  soft->add_option("--z", sa_z, "Reference vector CSV")->required();
  soft->add_option("--r", sa_r, "Constraint offset CSV")->required();
  soft->add_option("--L", sa_L, "Operator CSV (rows); identity when omitted");
  soft->add_option("--output", sa_out, "Output vector CSV")->required();
  add_set_options(soft, "c", sa_C);
  add_set_options(soft, "d", sa_D);
  add_phi_options(soft, "phi", sa_phi);
  add_phi_options(soft, "psi", sa_psi);
  add_solver_options(soft, sa_flags);

  // potter-arun
  auto* pa = app.add_subcommand("potter-arun", "Minimum-norm recovery from linear measurements");
  std::string pa_s, pa_rho, pa_out;
  SetSpec pa_C;
  SolveFlags pa_flags;
  pa->add_option("--s", pa_s, "Measurement vectors CSV, one row per measurement")->required();
  pa->add_option("--rho", pa_rho, "Measurements CSV")->required();
  pa->add_option("--output", pa_out, "Output vector CSV")->required();
  add_set_options(pa, "c", pa_C);
  add_solver_options(pa, pa_flags);

  // prox-eval
  auto* pe = app.add_subcommand("prox-eval", "Evaluate a scalar prox");
  PhiSpec pe_phi;
  double pe_gamma = 1.0, pe_x = 0.0;
  pe->add_option("--fun", pe_phi.kind, "Penalty kind")
      ->check(CLI::IsMember({"power", "neglog", "logbarrier", "huber"}))
      ->required();
  pe->add_option("--p", pe_phi.p, "Power exponent");
  pe->add_option("--alpha", pe_phi.alpha, "Weight");
  pe->add_option("--omega", pe_phi.omega, "Width parameter");
  pe->add_option("--tau", pe_phi.tau, "Huber curvature");
  pe->add_option("--gamma", pe_gamma, "Prox parameter")->check(CLI::PositiveNumber);
  pe->add_option("--x", pe_x, "Evaluation point")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "Run built-in oracle self-checks");
  std::string ver_suite = "all";
  ver->add_option("--suite", ver_suite, "prox-grid, adjoint, dykstra, or all")
      ->check(CLI::IsMember({"prox-grid", "adjoint", "dykstra", "all"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (tv->parsed()) {
      int maxval = 255;
      ImageGrid z = read_pgm(tv_in, &maxval);
      TVModel model;
      model.z = z;
      model.mu = tv_mu;
      model.p = tv_p == "1" ? TVNorm::L1 : (tv_p == "2" ? TVNorm::L2 : TVNorm::Linf);
      DualFBConfig cfg = to_config(tv_flags);
      if (tv_flags.gamma > 0.0) {
        // the --gamma flag is the tau step for tv
        double tau = tv_flags.gamma;
        double mu = tv_mu;
        cfg.gamma = [tau, mu](int) { return tau / mu; };
      }
      SolveResult res = tv_denoise(model, cfg);
      write_pgm(tv_out, image_from_vec(res.x, z.n), maxval);
      return finish_solve(res, tv_flags);
    }
    if (dict->parsed()) {
      DictModel model;
      model.z = read_vector_csv(dict_in);
      model.e = read_matrix_csv(dict_mat);
      if (dict_delta > 0.0) {
        model.delta = dict_delta;
      } else {
        double est = estimate_opnorm(from_rows(model.e), 200, 23);
        model.delta = est * est;
      }
      model.phi_k.assign(model.e.size(), build_phi(dict_phi));
      SolveResult res = dict_denoise(model, to_config(dict_flags));
      write_vector_csv(dict_out, res.x);
      return finish_solve(res, dict_flags);
    }
    if (best->parsed()) {
      BestApproxModel model{ConvexSetR::whole_space(1), ConvexSetR::whole_space(1), LinOp{},
                            VecR{}, VecR{}};
      model.z = read_vector_csv(ba_z);
      model.r = read_vector_csv(ba_r);
      model.L = operator_from_option(ba_L, model.z.size());
      model.C = build_set(ba_C, model.L.dim_in, "c");
      model.D = build_set(ba_D, model.L.dim_out, "d");
      SolveResult res = best_feasible_approx(model, to_config(ba_flags));
      write_vector_csv(ba_out, res.x);
      return finish_solve(res, ba_flags);
    }
    if (soft->parsed()) {
      SoftApproxModel model{ConvexSetR::whole_space(1), ConvexSetR::whole_space(1), LinOp{},
                            VecR{},  VecR{},            build_phi(sa_phi),
                            build_phi(sa_psi)};
      model.z = read_vector_csv(sa_z);
      model.r = read_vector_csv(sa_r);
      model.L = operator_from_option(sa_L, model.z.size());
      model.C = build_set(sa_C, model.L.dim_in, "c");
      model.D = build_set(sa_D, model.L.dim_out, "d");
      SolveResult res = soft_best_approx(model, to_config(sa_flags));
      write_vector_csv(sa_out, res.x);
      return finish_solve(res, sa_flags);
    }
    if (pa->parsed()) {
      PotterArunModel model{ConvexSetR::whole_space(1), {}, {}};
      model.s = read_matrix_csv(pa_s);
      VecR rho = read_vector_csv(pa_rho);
      model.rho.assign(rho.data().begin(), rho.data().end());
      model.C = build_set(pa_C, model.s[0].size(), "c");
      SolveResult res = potter_arun(model, to_config(pa_flags));
      write_vector_csv(pa_out, res.x);
      return finish_solve(res, pa_flags);
    }
    if (pe->parsed()) {
      double v = scalar_prox(build_phi(pe_phi), pe_gamma, pe_x);
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      std::cout << buf << "\n";
      return 0;
    }
    if (ver->parsed()) {
      bool ok = oracle::run_verify_suite(ver_suite, std::cout);
      if (!ok) std::cerr << "error: verify suite '" << ver_suite << "' failed\n";
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}

}  // namespace proxdual::io
