// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "proxdual/convex_set.hpp"
#include "proxdual/image.hpp"
#include "proxdual/scalar_fun.hpp"
#include "proxdual/solver.hpp"

namespace proxdual {

// Packaged problem shapes. Each solver routine below runs the specialized
// update printed for its problem class; each produces iterates identical to
// the generic solve_dual_fb on the equivalent (f, g, L, r, z), which the
// *_problem builders expose for cross-checks and objective evaluation.
//
// In the app routines, cfg.b_err is the primal-prox error sequence and
// cfg.a_err enters the dual step the way the specialized updates consume it
// (scaled by gamma where applicable).

/// Closest point of { x in C : Lx - r in D } to z.
struct BestApproxModel {
  ConvexSetR C;
  ConvexSetR D;
  LinOp L;
  VecR r;
  VecR z;
};
ProblemInstance best_approx_problem(const BestApproxModel& m);
SolveResult best_feasible_approx(const BestApproxModel& m, const DualFBConfig& cfg);

/// Minimum-norm element of C under the measurements <x, s_i> = rho_i,
/// with sum |s_i|^2 <= 1.
struct PotterArunModel {
  ConvexSetR C;
  std::vector<VecR> s;
  std::vector<double> rho;
};
ProblemInstance potter_arun_problem(const PotterArunModel& m);
/// The stored dual iterate is w = -v of the generic formulation.
SolveResult potter_arun(const PotterArunModel& m, const DualFBConfig& cfg);
/// |L(P_C(L* w)) - r| at the returned dual; tends to 0 at the solution.
double potter_arun_residual(const PotterArunModel& m, const VecR& w);

/// Soft-constrained variant: minimize phi(d_C(x)) + psi(d_D(Lx-r)) + |x-z|^2/2
/// with phi, psi even.
struct SoftApproxModel {
  ConvexSetR C;
  ConvexSetR D;
  LinOp L;
  VecR r;
  VecR z;
  ScalarFun phi;
  ScalarFun psi;
};
ProblemInstance soft_approx_problem(const SoftApproxModel& m);
SolveResult soft_best_approx(const SoftApproxModel& m, const DualFBConfig& cfg);

/// Relaxation of the measurement constraints by an l-infinity penalty:
/// minimize phi(d_C(x)) + alpha * max_i |<x,s_i> - rho_i| + |x|^2/2.
/// The dual prox is the exact l1-ball projection.
SolveResult linf_relaxed_recovery(const ConvexSetR& C, const ScalarFun& phi,
                                  const std::vector<VecR>& s, const std::vector<double>& rho,
                                  double alpha, const DualFBConfig& cfg);

/// Denoising over a dictionary of unit-norm vectors with frame bound delta:
/// minimize f(x) + sum_k phi_k(<x, e_k>) + |x-z|^2/2.
struct DictModel {
  std::vector<VecR> e;
  double delta = 0.0;
  std::vector<ScalarFun> phi_k;
  ProxFunPtr f;  // null = zero
  VecR z;
};
ProblemInstance dict_problem(const DictModel& m);
SolveResult dict_denoise(const DictModel& m, const DualFBConfig& cfg);

/// Discrete total-variation denoising:
/// minimize f(x) + mu * tv_p(x) + |x-z|^2/2, p in {1, 2, inf}.
enum class TVNorm { L1, L2, Linf };
struct TVModel {
  ImageGrid z;
  ProxFunPtr f;  // over flattened images; null = zero
  double mu = 0.0;
  TVNorm p = TVNorm::L2;
};
ProblemInstance tv_problem(const TVModel& m);
/// Result x/v are flattened (image_from_vec / field_from_vec recover them).
SolveResult tv_denoise(const TVModel& m, const DualFBConfig& cfg);

/// Pixelwise projection of each (c1, c2) pair onto the unit ball of the
/// norm dual to p.
GradField project_Dp(TVNorm p, const GradField& y);
/// Single pair version of the same projection.
void project_pair(TVNorm p, double& a, double& b);

/// sum over pixels of |(grad x)_{k,l}|_p.
double tv_value(TVNorm p, const ImageGrid& x);

/// Support function of the tv dual ball as a catalog object over flattened
/// fields; its conjugate prox is project_Dp.
ProxFunPtr make_dp_support(TVNorm p, int n);

}  // namespace proxdual
