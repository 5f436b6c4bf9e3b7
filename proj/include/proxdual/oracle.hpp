// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "proxdual/scalar_fun.hpp"
#include "proxdual/solver.hpp"

namespace proxdual::oracle {

/// Exhaustive-scan specification. Scan at `step`, then `refine_rounds`
/// coordinatewise ternary-search passes around the winning cell; the refined
/// result is conservatively within step/8 of the true minimizer for smooth
/// objectives, usually far closer.
struct GridSpec {
  std::vector<double> lo, hi;  // per dimension, at most 3 dims
  double step = 1e-3;
  int refine_rounds = 3;
  /// Accept an argmin on the scan boundary (needed when the scan range is
  /// exactly a bounded domain).
  bool allow_boundary_argmin = false;

  void validate() const;
};

/// Brute-force argmin of phi(y) + (xi - y)^2 / (2*gamma) over the 1-d grid.
double grid_argmin_scalar(const ScalarFun& phi, double gamma, double xi, const GridSpec& gs);

/// Brute-force argmin of the primal objective; requires value capabilities
/// on f and g (indicator kinds mask infeasible cells). dim(H) <= 3.
VecR primal_grid_oracle(const ProblemInstance& P, const GridSpec& gs);

/// Independent reference run of the two-function Dykstra-like scheme
///   y0 = z, q0 = 0, p0 = 0
///   x_n = prox_f(y_n + q_n); q_{n+1} = y_n + q_n - x_n
///   y_{n+1} = prox_g(x_n + p_n); p_{n+1} = x_n + p_n - y_{n+1}
/// Returns the (x_n, p_{n+1}) trajectory.
std::vector<std::pair<VecR, VecR>> dykstra_reference(const ProxFunction& f,
                                                     const ProxFunction& g, const VecR& z,
                                                     int iters);

/// Minimum-norm solution of <x, s_i> = rho_i via the normal equations;
/// requires linearly independent rows.
VecR min_norm_closed_form(const std::vector<VecR>& s, const std::vector<double>& rho);

/// Named self-check suites for the CLI (prox-grid, adjoint, dykstra, all).
/// Prints one line per check to `out`; returns true when everything passed.
bool run_verify_suite(const std::string& name, std::ostream& out);

}  // namespace proxdual::oracle
