// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "proxdual/linop.hpp"
#include "proxdual/prox_function.hpp"
#include "proxdual/vec.hpp"

namespace proxdual {

/// The composite problem  minimize f(x) + g(Lx - r) + |x - z|^2 / 2.
/// The library cannot verify the interior-type qualification on (f, g, L, r);
/// the caller asserts it by setting qualification_asserted.
struct ProblemInstance {
  ProxFunPtr f;
  ProxFunPtr g;
  LinOp L;
  VecR z;
  VecR r;
  bool qualification_asserted = false;

  void validate() const;
};

/// Geometric error sequence e_n = decay^n * u. The summability contract
/// requires decay in [0, 1) unless u is zero.
struct ErrorSeq {
  VecR u;
  double decay = 0.0;

  bool is_zero() const { return u.empty() || norm(u) == 0.0; }
  void validate(const char* name) const;
  VecR at(int n, int dim, Space s) const;
};

enum class StopReason { IterateTol, GapTol, MaxIter, Stagnation };

const char* to_string(StopReason r);

struct TraceRow {
  int n = 0;
  double iterate_change = 0.0;
  std::optional<double> primal_obj;
  std::optional<double> dual_obj;
  std::optional<double> gap;
  double wall_time_ms = 0.0;
};

struct DualFBConfig {
  /// Box parameter; defaults to min(0.05 / norm_bound^2, 0.5).
  double epsilon = -1.0;
  /// Step schedule gamma_n in [eps, 2/norm_bound^2 - eps]; null = constant
  /// 1.9 / norm_bound^2.
  std::function<double(int)> gamma;
  /// Relaxation schedule lambda_n in [eps, 1]; null = constant 1.
  std::function<double(int)> lambda;
  ErrorSeq a_err;  // dual-prox errors
  ErrorSeq b_err;  // primal-prox errors
  int max_iter = 10000;
  double tol_iterate = 1e-9;
  std::optional<double> tol_gap;
  VecR v0;  // empty = zero start
  bool record_iterates = false;
  /// When set, a window of non-improving iterate changes above tolerance
  /// terminates with StopReason::Stagnation (suspected infeasible or
  /// unqualified data).
  bool detect_stagnation = false;
  int stagnation_window = 200;
};

struct SolveResult {
  VecR x;
  VecR v;
  int iterations = 0;
  std::vector<TraceRow> trace;
  StopReason reason = StopReason::MaxIter;
  // Populated when record_iterates is set: per-iteration (x_n, v_{n+1}).
  std::vector<VecR> x_history;
  std::vector<VecR> v_history;
};

/// Forward-backward splitting on the dual of ProblemInstance. Produces the
/// dual iterate v and the primal solution recovered as prox_f(z - L* v);
/// the final x is recomputed without the b error.
SolveResult solve_dual_fb(const ProblemInstance& P, const DualFBConfig& cfg);

/// n-th primal error added to x_n; sees the current dual iterate.
using PrimalErrorHook = std::function<VecR(int n, const VecR& v)>;
/// n-th dual error added inside the v update; sees v_n and x_n.
using DualErrorHook = std::function<VecR(int n, const VecR& v, const VecR& x)>;

/// Same iteration with caller-supplied error terms; hooks may be null.
/// The caller is responsible for summability of hook-generated errors.
SolveResult solve_dual_fb_hooked(const ProblemInstance& P, const DualFBConfig& cfg,
                                 const PrimalErrorHook& a_hook_primal,
                                 const DualErrorHook& a_hook_dual);

/// x = prox_f(z - L* v); the primal solution when v solves the dual.
VecR recover_primal(const ProblemInstance& P, const VecR& v);

/// f(x) + g(Lx - r) + |x-z|^2/2. Throws CapabilityError when f or g has no
/// value capability. May return +infinity.
double primal_objective(const ProblemInstance& P, const VecR& x);

/// env(f*)(z - L*v) + g*(v) + <v, r>, the dual objective. Requires a value
/// on f and a conjugate value on g.
double dual_objective(const ProblemInstance& P, const VecR& v);

std::optional<double> try_primal_objective(const ProblemInstance& P, const VecR& x);
std::optional<double> try_dual_objective(const ProblemInstance& P, const VecR& v);

/// primal + dual - |z|^2/2; nonnegative, zero exactly at a primal/dual
/// optimal pair.
std::optional<double> try_duality_gap(const ProblemInstance& P, const VecR& x, const VecR& v);

/// Dykstra-like special case (G = H, L = Id, r = 0, unit steps):
///   x_n = prox_f(z - v_n),  v_{n+1} = x_n + v_n - prox_g(x_n + v_n).
/// x_n converges to prox_{f+g}(z).
SolveResult solve_dykstra_mode(const ProxFunction& f, const ProxFunction& g, const VecR& z,
                               int max_iter, double tol, bool record_iterates = false);

struct OperatorErrorSeqs {
  ErrorSeq c1, c2;  // dual-side: prox error and forward-operator error
  ErrorSeq d1, d2;  // primal-side: prox error and adjoint-operator error
};

/// Iteration with explicit operator-evaluation errors:
///   x_n = prox_f(z - L*v_n - d2_n) + d1_n
///   v_{n+1} = v_n + lambda_n (prox_{gamma_n g*}(v_n + gamma_n (L x_n + c2_n - r)) + c1_n - v_n)
/// Reduces exactly to solve_dual_fb for a derived pair of error sequences.
SolveResult solve_dual_fb_with_operator_errors(const ProblemInstance& P, const DualFBConfig& cfg,
                                               const OperatorErrorSeqs& errs);

}  // namespace proxdual
