// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

// Internal helpers shared by the generic solver and the specialized
// application routines. Not installed.

#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "proxdual/solver.hpp"

namespace proxdual::detail {

using Clock = std::chrono::steady_clock;

inline double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Schedules {
  double eps;
  std::function<double(int)> gamma;
  std::function<double(int)> lambda;
};

inline Schedules resolve_schedules(const DualFBConfig& cfg, double norm_bound) {
  const double beta = 1.0 / (norm_bound * norm_bound);
  Schedules s;
  s.eps = cfg.epsilon > 0.0 ? cfg.epsilon : std::min(0.05 * beta, 0.5);
  if (!(s.eps > 0.0 && s.eps < std::min(1.0, beta)))
    throw InvalidInputError("epsilon outside ]0, min(1, 1/|L|^2)[");
  const double gdef = 1.9 * beta;
  s.gamma = cfg.gamma ? cfg.gamma : [gdef](int) { return gdef; };
  s.lambda = cfg.lambda ? cfg.lambda : [](int) { return 1.0; };
  return s;
}

inline void check_step(double gamma, double lambda, double eps, double beta, int n) {
  const double slack = 1e-12;
  if (!(gamma >= eps - slack && gamma <= 2.0 * beta - eps + slack))
    throw InvalidInputError("gamma schedule leaves [eps, 2/|L|^2 - eps] at n=" +
                            std::to_string(n));
  if (!(lambda >= eps - slack && lambda <= 1.0 + slack))
    throw InvalidInputError("lambda schedule leaves [eps, 1] at n=" + std::to_string(n));
}

struct StopMonitor {
  const DualFBConfig& cfg;
  double best_delta = std::numeric_limits<double>::infinity();
  int since_best = 0;

  std::optional<StopReason> check(int n, double delta, double vnorm, std::optional<double> gap) {
    if (cfg.tol_gap && gap && *gap <= *cfg.tol_gap) return StopReason::GapTol;
    if (delta / std::max(1.0, vnorm) <= cfg.tol_iterate) return StopReason::IterateTol;
    if (cfg.detect_stagnation) {
      if (delta < 0.999 * best_delta) {
        best_delta = delta;
        since_best = 0;
      } else if (++since_best >= cfg.stagnation_window) {
        return StopReason::Stagnation;
      }
    }
    if (n + 1 >= cfg.max_iter) return StopReason::MaxIter;
    return std::nullopt;
  }
};

inline TraceRow make_trace_row(const ProblemInstance& P, int n, double delta, const VecR& v_next,
                               Clock::time_point t0) {
  TraceRow row;
  row.n = n;
  row.iterate_change = delta;
  VecR xr = P.f->prox(1.0, P.z - P.L.apply_adjoint(v_next));
  row.primal_obj = try_primal_objective(P, xr);
  row.dual_obj = try_dual_objective(P, v_next);
  if (row.primal_obj && row.dual_obj && std::isfinite(*row.primal_obj) &&
      std::isfinite(*row.dual_obj))
    row.gap = *row.primal_obj + *row.dual_obj - dot(P.z, P.z) / 2.0;
  row.wall_time_ms = elapsed_ms(t0);
  return row;
}

}  // namespace proxdual::detail
