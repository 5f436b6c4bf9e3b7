// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/solver.hpp"

#include <cmath>
#include <string>

#include "solver_detail.hpp"

namespace proxdual {

using detail::Clock;

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::IterateTol:
      return "iterate_tol";
    case StopReason::GapTol:
      return "gap_tol";
    case StopReason::MaxIter:
      return "max_iter";
    case StopReason::Stagnation:
      return "stagnation";
  }
  return "?";
}

void ProblemInstance::validate() const {
  if (!f || !g) throw InvalidInputError("problem: missing f or g");
  if (!(L.norm_bound > 0.0))
    throw InvalidInputError("problem: L must be nonzero with a positive norm bound");
  if (f->dim() != L.dim_in || g->dim() != L.dim_out)
    throw InvalidInputError("problem: function/operator dimension mismatch");
  if (z.size() != L.dim_in || z.space() != L.in_space)
    throw InvalidInputError("problem: z must live in the domain of L");
  if (r.size() != L.dim_out || r.space() != L.out_space)
    throw InvalidInputError("problem: r must live in the codomain of L");
  check_finite(z, "z");
  check_finite(r, "r");
  if (!qualification_asserted)
    throw InvalidInputError(
        "problem: qualification_asserted must be set; the library cannot verify it");
}

void ErrorSeq::validate(const char* name) const {
  if (is_zero()) return;
  check_finite(u, name);
  if (!(decay >= 0.0 && decay < 1.0))
    throw InvalidInputError(std::string(name) +
                            ": error sequence must be summable (decay in [0,1))");
}

VecR ErrorSeq::at(int n, int dim, Space s) const {
  if (is_zero()) return VecR(dim, s);
  if (u.size() != dim) throw InvalidInputError("error sequence dimension mismatch");
  return std::pow(decay, n) * u.retagged(s);
}

VecR recover_primal(const ProblemInstance& P, const VecR& v) {
  return P.f->prox(1.0, P.z - P.L.apply_adjoint(v));
}

std::optional<double> try_primal_objective(const ProblemInstance& P, const VecR& x) {
  auto fv = P.f->value(x);
  if (!fv) return std::nullopt;
  auto gv = P.g->value(P.L.apply(x) - P.r);
  if (!gv) return std::nullopt;
  VecR d = x - P.z;
  return *fv + *gv + dot(d, d) / 2.0;
}

std::optional<double> try_dual_objective(const ProblemInstance& P, const VecR& v) {
  VecR u = P.z - P.L.apply_adjoint(v);
  VecR p = P.f->prox(1.0, u);
  auto fv = P.f->value(p);
  if (!fv) return std::nullopt;
  auto gc = P.g->conj_value(v);
  if (!gc) return std::nullopt;
  VecR d = u - p;
  double f_env = *fv + dot(d, d) / 2.0;
  double fstar_env = dot(u, u) / 2.0 - f_env;
  return fstar_env + *gc + dot(v, P.r);
}

double primal_objective(const ProblemInstance& P, const VecR& x) {
  auto v = try_primal_objective(P, x);
  if (!v) throw CapabilityError("primal_objective: f or g has no value capability");
  return *v;
}

double dual_objective(const ProblemInstance& P, const VecR& v) {
  auto d = try_dual_objective(P, v);
  if (!d) throw CapabilityError("dual_objective: needs a value on f and a conjugate value on g");
  return *d;
}

std::optional<double> try_duality_gap(const ProblemInstance& P, const VecR& x, const VecR& v) {
  auto p = try_primal_objective(P, x);
  auto d = try_dual_objective(P, v);
  if (!p || !d) return std::nullopt;
  if (!std::isfinite(*p) || !std::isfinite(*d)) return std::nullopt;
  return *p + *d - dot(P.z, P.z) / 2.0;
}

SolveResult solve_dual_fb_hooked(const ProblemInstance& P, const DualFBConfig& cfg,
                                 const PrimalErrorHook& b_hook, const DualErrorHook& a_hook) {
  P.validate();
  const double beta = 1.0 / (P.L.norm_bound * P.L.norm_bound);
  detail::Schedules sched = detail::resolve_schedules(cfg, P.L.norm_bound);
  if (cfg.max_iter < 1) throw InvalidInputError("max_iter must be >= 1");

  const auto t0 = Clock::now();
  SolveResult res;
  VecR v = cfg.v0.empty() ? VecR(P.L.dim_out, P.L.out_space) : cfg.v0.retagged(P.L.out_space);
  if (v.size() != P.L.dim_out) throw InvalidInputError("v0 dimension mismatch");
  check_finite(v, "v0");

  detail::StopMonitor monitor{cfg};
  for (int n = 0;; ++n) {
    double gamma = sched.gamma(n);
    double lambda = sched.lambda(n);
    detail::check_step(gamma, lambda, sched.eps, beta, n);

    VecR x = P.f->prox(1.0, P.z - P.L.apply_adjoint(v));
    if (b_hook) x += b_hook(n, v);

    VecR u = v + gamma * (P.L.apply(x) - P.r);
    VecR step = prox_conjugate(*P.g, gamma, u);
    if (a_hook) step += a_hook(n, v, x);
    VecR v_next = v + lambda * (step - v);

    if (!v_next.all_finite() || !x.all_finite())
      throw DivergenceError("solve_dual_fb: non-finite iterate at n=" + std::to_string(n), n);

    double delta = norm(v_next - v);
    res.trace.push_back(detail::make_trace_row(P, n, delta, v_next, t0));
    if (cfg.record_iterates) {
      res.x_history.push_back(x);
      res.v_history.push_back(v_next);
    }

    double vnorm = norm(v);
    v = v_next;
    res.iterations = n + 1;
    if (auto reason = monitor.check(n, delta, vnorm, res.trace.back().gap)) {
      res.reason = *reason;
      break;
    }
  }
  res.v = v;
  res.x = recover_primal(P, v);
  return res;
}

SolveResult solve_dual_fb(const ProblemInstance& P, const DualFBConfig& cfg) {
  cfg.a_err.validate("a_err");
  cfg.b_err.validate("b_err");
  PrimalErrorHook b_hook;
  DualErrorHook a_hook;
  if (!cfg.b_err.is_zero()) {
    ErrorSeq b = cfg.b_err;
    Space s = P.L.in_space;
    int d = P.L.dim_in;
    b_hook = [b, d, s](int n, const VecR&) { return b.at(n, d, s); };
  }
  if (!cfg.a_err.is_zero()) {
    ErrorSeq a = cfg.a_err;
    Space s = P.L.out_space;
    int d = P.L.dim_out;
    a_hook = [a, d, s](int n, const VecR&, const VecR&) { return a.at(n, d, s); };
  }
  return solve_dual_fb_hooked(P, cfg, b_hook, a_hook);
}

SolveResult solve_dykstra_mode(const ProxFunction& f, const ProxFunction& g, const VecR& z,
                               int max_iter, double tol, bool record_iterates) {
  if (f.dim() != z.size() || g.dim() != z.size())
    throw InvalidInputError("solve_dykstra_mode: dimension mismatch");
  if (max_iter < 1) throw InvalidInputError("max_iter must be >= 1");
  check_finite(z, "z");

  const auto t0 = Clock::now();
  SolveResult res;
  VecR v(z.size(), z.space());
  VecR x = z;
  for (int n = 0;; ++n) {
    x = f.prox(1.0, z - v);
    VecR t = x + v;
    VecR v_next = t - g.prox(1.0, t);
    if (!v_next.all_finite() || !x.all_finite())
      throw DivergenceError("solve_dykstra_mode: non-finite iterate at n=" + std::to_string(n),
                            n);
    double delta = norm(v_next - v);
    TraceRow row;
    row.n = n;
    row.iterate_change = delta;
    row.wall_time_ms = detail::elapsed_ms(t0);
    res.trace.push_back(row);
    if (record_iterates) {
      res.x_history.push_back(x);
      res.v_history.push_back(v_next);
    }
    double vnorm = norm(v);
    v = v_next;
    res.iterations = n + 1;
    if (delta / std::max(1.0, vnorm) <= tol) {
      res.reason = StopReason::IterateTol;
      break;
    }
    if (n + 1 >= max_iter) {
      res.reason = StopReason::MaxIter;
      break;
    }
  }
  res.v = v;
  res.x = x;
  return res;
}

SolveResult solve_dual_fb_with_operator_errors(const ProblemInstance& P, const DualFBConfig& cfg,
                                               const OperatorErrorSeqs& errs) {
  errs.c1.validate("c1");
  errs.c2.validate("c2");
  errs.d1.validate("d1");
  errs.d2.validate("d2");
  P.validate();
  const double beta = 1.0 / (P.L.norm_bound * P.L.norm_bound);
  detail::Schedules sched = detail::resolve_schedules(cfg, P.L.norm_bound);
  if (cfg.max_iter < 1) throw InvalidInputError("max_iter must be >= 1");

  const auto t0 = Clock::now();
  SolveResult res;
  VecR v = cfg.v0.empty() ? VecR(P.L.dim_out, P.L.out_space) : cfg.v0.retagged(P.L.out_space);
  if (v.size() != P.L.dim_out) throw InvalidInputError("v0 dimension mismatch");

  const int dh = P.L.dim_in, dg = P.L.dim_out;
  const Space sh = P.L.in_space, sg = P.L.out_space;
  detail::StopMonitor monitor{cfg};
  for (int n = 0;; ++n) {
    double gamma = sched.gamma(n);
    double lambda = sched.lambda(n);
    detail::check_step(gamma, lambda, sched.eps, beta, n);

    VecR x = P.f->prox(1.0, P.z - P.L.apply_adjoint(v) - errs.d2.at(n, dh, sh)) +
             errs.d1.at(n, dh, sh);
    VecR u = v + gamma * (P.L.apply(x) + errs.c2.at(n, dg, sg) - P.r);
    VecR v_next = v + lambda * (prox_conjugate(*P.g, gamma, u) + errs.c1.at(n, dg, sg) - v);

    if (!v_next.all_finite() || !x.all_finite())
      throw DivergenceError(
          "operator-error iteration: non-finite iterate at n=" + std::to_string(n), n);

    double delta = norm(v_next - v);
    res.trace.push_back(detail::make_trace_row(P, n, delta, v_next, t0));
    if (cfg.record_iterates) {
      res.x_history.push_back(x);
      res.v_history.push_back(v_next);
    }

    double vnorm = norm(v);
    v = v_next;
    res.iterations = n + 1;
    if (auto reason = monitor.check(n, delta, vnorm, res.trace.back().gap)) {
      res.reason = *reason;
      break;
    }
  }
  res.v = v;
  res.x = recover_primal(P, v);
  return res;
}

}  // namespace proxdual
