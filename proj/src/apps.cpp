// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/apps.hpp"

#include <cmath>
#include <string>

#include "proxdual/opnorm.hpp"
#include "solver_detail.hpp"

namespace proxdual {

using detail::Clock;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

DualFBConfig app_config(const DualFBConfig& cfg) {
  DualFBConfig c = cfg;
  // Feasibility violations show up as a stalled iterate change; report them
  // instead of spinning to max_iter.
  c.detect_stagnation = true;
  return c;
}
}  // namespace

ProblemInstance best_approx_problem(const BestApproxModel& m) {
  ProblemInstance P;
  P.f = make_indicator(m.C);
  P.g = make_indicator(m.D);
  P.L = m.L;
  P.z = m.z.retagged(m.L.in_space);
  P.r = m.r.retagged(m.L.out_space);
  P.qualification_asserted = true;
  return P;
}

SolveResult best_feasible_approx(const BestApproxModel& m, const DualFBConfig& cfg0) {
  ProblemInstance P = best_approx_problem(m);
  P.validate();
  DualFBConfig cfg = app_config(cfg0);
  cfg.a_err.validate("c_err");
  cfg.b_err.validate("b_err");
  const double beta = 1.0 / (P.L.norm_bound * P.L.norm_bound);
  detail::Schedules sched = detail::resolve_schedules(cfg, P.L.norm_bound);

  const auto t0 = Clock::now();
  SolveResult res;
  VecR v = cfg.v0.empty() ? VecR(P.L.dim_out, P.L.out_space) : cfg.v0.retagged(P.L.out_space);
  detail::StopMonitor monitor{cfg};
  for (int n = 0;; ++n) {
    double gamma = sched.gamma(n);
    double lambda = sched.lambda(n);
    detail::check_step(gamma, lambda, sched.eps, beta, n);

    VecR x = m.C.project(P.z - P.L.apply_adjoint(v)) + cfg.b_err.at(n, P.L.dim_in, P.L.in_space);
    VecR d = P.L.apply(x) - P.r;
    VecR w = (1.0 / gamma) * v + d;
    VecR pn = d - m.D.project(w) + cfg.a_err.at(n, P.L.dim_out, P.L.out_space);
    VecR v_next = v + (lambda * gamma) * pn;

    if (!v_next.all_finite() || !x.all_finite())
      throw DivergenceError("best_feasible_approx: non-finite iterate at n=" + std::to_string(n),
                            n);
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

ProblemInstance potter_arun_problem(const PotterArunModel& m) {
  if (m.s.empty() || m.s.size() != m.rho.size())
    throw InvalidInputError("potter_arun: need one measurement per vector");
  double energy = 0.0;
  for (const VecR& si : m.s) energy += dot(si, si);
  if (energy > 1.0 + 1e-12)
    throw InvalidInputError("potter_arun: sum |s_i|^2 must be at most 1");
  ProblemInstance P;
  P.f = make_indicator(m.C);
  P.L = from_rows(m.s);
  P.g = make_indicator(ConvexSetR::singleton(VecR(P.L.dim_out, Space::G)));
  P.z = VecR(P.L.dim_in, Space::H);
  P.r = VecR::from(m.rho, Space::G);
  P.qualification_asserted = true;
  return P;
}

SolveResult potter_arun(const PotterArunModel& m, const DualFBConfig& cfg0) {
  ProblemInstance P = potter_arun_problem(m);
  P.validate();
  DualFBConfig cfg = app_config(cfg0);
  cfg.b_err.validate("b_err");
  const double beta = 1.0 / (P.L.norm_bound * P.L.norm_bound);
  detail::Schedules sched = detail::resolve_schedules(cfg, P.L.norm_bound);

  const auto t0 = Clock::now();
  SolveResult res;
  VecR w = cfg.v0.empty() ? VecR(P.L.dim_out, P.L.out_space) : cfg.v0.retagged(P.L.out_space);
  detail::StopMonitor monitor{cfg};
  for (int n = 0;; ++n) {
    double gamma = sched.gamma(n);
    double lambda = sched.lambda(n);
    detail::check_step(gamma, lambda, sched.eps, beta, n);

    VecR x = m.C.project(P.L.apply_adjoint(w)) + cfg.b_err.at(n, P.L.dim_in, P.L.in_space);
    VecR w_next =
        w + (lambda * gamma) * (P.r - P.L.apply(x) - cfg.a_err.at(n, P.L.dim_out, P.L.out_space));

    if (!w_next.all_finite() || !x.all_finite())
      throw DivergenceError("potter_arun: non-finite iterate at n=" + std::to_string(n), n);
    double delta = norm(w_next - w);
    res.trace.push_back(detail::make_trace_row(P, n, delta, -w_next, t0));
    if (cfg.record_iterates) {
      res.x_history.push_back(x);
      res.v_history.push_back(w_next);
    }
    double wnorm = norm(w);
    w = w_next;
    res.iterations = n + 1;
    if (auto reason = monitor.check(n, delta, wnorm, res.trace.back().gap)) {
      res.reason = *reason;
      break;
    }
  }
  res.v = w;  // stored dual is w = -v
  res.x = m.C.project(P.L.apply_adjoint(w));
  return res;
}

double potter_arun_residual(const PotterArunModel& m, const VecR& w) {
  ProblemInstance P = potter_arun_problem(m);
  VecR x = m.C.project(P.L.apply_adjoint(w.retagged(P.L.out_space)));
  return norm(P.L.apply(x) - P.r);
}

ProblemInstance soft_approx_problem(const SoftApproxModel& m) {
  ProblemInstance P;
  P.f = make_phi_of_dist(m.phi, m.C);
  P.g = make_phi_of_dist(m.psi, m.D);
  P.L = m.L;
  P.z = m.z.retagged(m.L.in_space);
  P.r = m.r.retagged(m.L.out_space);
  P.qualification_asserted = true;
  return P;
}

SolveResult soft_best_approx(const SoftApproxModel& m, const DualFBConfig& cfg0) {
  ProblemInstance P = soft_approx_problem(m);  // also validates phi/psi evenness
  P.validate();
  DualFBConfig cfg = app_config(cfg0);
  cfg.a_err.validate("c_err");
  cfg.b_err.validate("b_err");
  const double beta = 1.0 / (P.L.norm_bound * P.L.norm_bound);
  detail::Schedules sched = detail::resolve_schedules(cfg, P.L.norm_bound);
  const double thr_f = *m.phi.max_subgradient_at_zero();
  const double psi_max0 = *m.psi.max_subgradient_at_zero();

  const auto t0 = Clock::now();
  SolveResult res;
  VecR v = cfg.v0.empty() ? VecR(P.L.dim_out, P.L.out_space) : cfg.v0.retagged(P.L.out_space);
  detail::StopMonitor monitor{cfg};
  for (int n = 0;; ++n) {
    double gamma = sched.gamma(n);
    double lambda = sched.lambda(n);
    detail::check_step(gamma, lambda, sched.eps, beta, n);

    VecR y = P.z - P.L.apply_adjoint(v);
    VecR pc = m.C.project(y);
    double dc = norm(y - pc);
    VecR x(P.L.dim_in, P.L.in_space);
    if (dc > thr_f) {
      double t = scalar_prox_conj_unit(m.phi.scaled(1.0), dc);
      x = y + (t / dc) * (pc - y);
    } else {
      x = pc;
    }
    x += cfg.b_err.at(n, P.L.dim_in, P.L.in_space);

    VecR w = (1.0 / gamma) * v + (P.L.apply(x) - P.r);
    VecR pd = m.D.project(w);
    double dd = norm(w - pd);
    VecR pn(P.L.dim_out, P.L.out_space);
    if (dd > psi_max0 / gamma) {
      double t = scalar_prox_conj_unit(m.psi.scaled(1.0 / gamma), dd);
      pn = (t / dd) * (w - pd);
    } else {
      pn = w - pd;
    }
    pn += cfg.a_err.at(n, P.L.dim_out, P.L.out_space);
    VecR v_next = v + lambda * (gamma * pn - v);

    if (!v_next.all_finite() || !x.all_finite())
      throw DivergenceError("soft_best_approx: non-finite iterate at n=" + std::to_string(n), n);
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

SolveResult linf_relaxed_recovery(const ConvexSetR& C, const ScalarFun& phi,
                                  const std::vector<VecR>& s, const std::vector<double>& rho,
                                  double alpha, const DualFBConfig& cfg) {
  if (!(alpha > 0.0)) throw InvalidInputError("linf_relaxed_recovery: alpha must be positive");
  if (s.empty() || s.size() != rho.size())
    throw InvalidInputError("linf_relaxed_recovery: need one measurement per vector");
  ProblemInstance P;
  P.f = make_phi_of_dist(phi, C);
  P.L = from_rows(s);
  P.g = make_support(ConvexSetR::l1_ball(P.L.dim_out, alpha));
  P.z = VecR(P.L.dim_in, Space::H);
  P.r = VecR::from(rho, Space::G);
  P.qualification_asserted = true;  // g is finite everywhere
  return solve_dual_fb(P, app_config(cfg));
}

ProblemInstance dict_problem(const DictModel& m) {
  if (m.e.empty()) throw InvalidInputError("dict: empty dictionary");
  if (m.e.size() != m.phi_k.size())
    throw InvalidInputError("dict: need one penalty per dictionary vector");
  const int dim = m.e[0].size();
  for (const VecR& ek : m.e)
    if (std::abs(norm(ek) - 1.0) > 1e-10)
      throw StructuralError("dict: dictionary vectors must have unit norm");
  for (const ScalarFun& phi : m.phi_k)
    if (!phi.nonneg_with_zero_at_zero())
      throw InvalidInputError("dict: penalties must satisfy phi >= phi(0) = 0");
  if (!(m.delta > 0.0)) throw InvalidInputError("dict: frame bound must be positive");
  LinOp L = from_rows(m.e);
  double lam_est = power_iteration_norm(L, 100, 17);
  if (m.delta < lam_est * lam_est * (1.0 - 1e-9))
    throw StructuralError("dict: frame bound below the estimated largest frame eigenvalue");
  L.norm_bound = std::sqrt(m.delta);
  if (m.z.size() != dim) throw InvalidInputError("dict: data dimension mismatch");

  ProblemInstance P;
  P.f = m.f ? m.f : make_zero(dim);
  std::vector<VecR> canon;
  canon.reserve(m.e.size());
  for (size_t k = 0; k < m.e.size(); ++k) {
    VecR ek(static_cast<int>(m.e.size()), Space::G);
    ek[static_cast<int>(k)] = 1.0;
    canon.push_back(ek);
  }
  P.g = make_separable_basis(m.phi_k, canon);
  P.L = std::move(L);
  P.z = m.z.retagged(Space::H);
  P.r = VecR(static_cast<int>(m.e.size()), Space::G);
  P.qualification_asserted = true;
  return P;
}

SolveResult dict_denoise(const DictModel& m, const DualFBConfig& cfg0) {
  ProblemInstance P = dict_problem(m);
  P.validate();
  DualFBConfig cfg = app_config(cfg0);
  cfg.a_err.validate("alpha_err");
  cfg.b_err.validate("b_err");
  const double beta = 1.0 / (P.L.norm_bound * P.L.norm_bound);
  detail::Schedules sched = detail::resolve_schedules(cfg, P.L.norm_bound);
  const int K = P.L.dim_out;

  const auto t0 = Clock::now();
  SolveResult res;
  VecR nu = cfg.v0.empty() ? VecR(K, Space::G) : cfg.v0.retagged(Space::G);
  detail::StopMonitor monitor{cfg};
  for (int n = 0;; ++n) {
    double gamma = sched.gamma(n);
    double lambda = sched.lambda(n);
    detail::check_step(gamma, lambda, sched.eps, beta, n);

    VecR x = P.f->prox(1.0, P.z - P.L.apply_adjoint(nu)) + cfg.b_err.at(n, P.L.dim_in, Space::H);
    VecR an = cfg.a_err.at(n, K, Space::G);
    VecR nu_next = nu;
    const double inv = 1.0 / gamma;
    for (int k = 0; k < K; ++k) {
      double t = nu[k] + gamma * dot(x, m.e[static_cast<size_t>(k)].retagged(Space::H));
      double conj_prox = t - gamma * scalar_prox(m.phi_k[static_cast<size_t>(k)], inv, t * inv);
      nu_next[k] = nu[k] + lambda * (conj_prox + an[k] - nu[k]);
    }

    if (!nu_next.all_finite() || !x.all_finite())
      throw DivergenceError("dict_denoise: non-finite iterate at n=" + std::to_string(n), n);
    double delta = norm(nu_next - nu);
    res.trace.push_back(detail::make_trace_row(P, n, delta, nu_next, t0));
    if (cfg.record_iterates) {
      res.x_history.push_back(x);
      res.v_history.push_back(nu_next);
    }
    double vnorm = norm(nu);
    nu = nu_next;
    res.iterations = n + 1;
    if (auto reason = monitor.check(n, delta, vnorm, res.trace.back().gap)) {
      res.reason = *reason;
      break;
    }
  }
  res.v = nu;
  res.x = recover_primal(P, nu);
  return res;
}

void project_pair(TVNorm p, double& a, double& b) {
  switch (p) {
    case TVNorm::L1: {
      a = a / std::max(1.0, std::abs(a));
      b = b / std::max(1.0, std::abs(b));
      return;
    }
    case TVNorm::L2: {
      double den = std::max(1.0, std::sqrt(a * a + b * b));
      a /= den;
      b /= den;
      return;
    }
    case TVNorm::Linf: {
      double ua = std::abs(a), ub = std::abs(b);
      if (ua + ub <= 1.0) return;
      double hi = std::max(ua, ub), lo = std::min(ua, ub);
      double theta = (hi + lo - 1.0) / 2.0;
      if (theta > lo) theta = hi - 1.0;
      double na = std::max(ua - theta, 0.0), nb = std::max(ub - theta, 0.0);
      a = a >= 0.0 ? na : -na;
      b = b >= 0.0 ? nb : -nb;
      return;
    }
  }
}

GradField project_Dp(TVNorm p, const GradField& y) {
  GradField out = y;
  const size_t m = out.c1.size();
  for (size_t i = 0; i < m; ++i) project_pair(p, out.c1[i], out.c2[i]);
  return out;
}

namespace {
double pair_norm(TVNorm p, double a, double b) {
  switch (p) {
    case TVNorm::L1:
      return std::abs(a) + std::abs(b);
    case TVNorm::L2:
      return std::sqrt(a * a + b * b);
    case TVNorm::Linf:
      return std::max(std::abs(a), std::abs(b));
  }
  return 0.0;
}

double dual_pair_norm(TVNorm p, double a, double b) {
  switch (p) {
    case TVNorm::L1:
      return std::max(std::abs(a), std::abs(b));
    case TVNorm::L2:
      return std::sqrt(a * a + b * b);
    case TVNorm::Linf:
      return std::abs(a) + std::abs(b);
  }
  return 0.0;
}

class DpSupportFn final : public ProxFunction {
 public:
  DpSupportFn(TVNorm p, int n) : p_(p), n_(n) {}
  int dim() const override { return 2 * n_ * n_; }
  VecR prox(double gamma, const VecR& x) const override {
    GradField f = field_from_vec((1.0 / gamma) * x, n_);
    return x - gamma * to_vec(project_Dp(p_, f), x.space());
  }
  std::optional<double> value(const VecR& x) const override {
    GradField f = field_from_vec(x, n_);
    double s = 0.0;
    for (size_t i = 0; i < f.c1.size(); ++i) s += pair_norm(p_, f.c1[i], f.c2[i]);
    return s;
  }
  std::optional<double> conj_value(const VecR& u) const override {
    GradField f = field_from_vec(u, n_);
    for (size_t i = 0; i < f.c1.size(); ++i)
      if (dual_pair_norm(p_, f.c1[i], f.c2[i]) > 1.0 + 1e-9) return kInf;
    return 0.0;
  }
  bool has_native_conj_prox() const override { return true; }
  VecR conj_prox_native(double, const VecR& x) const override {
    return to_vec(project_Dp(p_, field_from_vec(x, n_)), x.space());
  }

 private:
  TVNorm p_;
  int n_;
};
}  // namespace

ProxFunPtr make_dp_support(TVNorm p, int n) { return std::make_shared<DpSupportFn>(p, n); }

double tv_value(TVNorm p, const ImageGrid& x) {
  GradField g = discrete_gradient(x);
  double s = 0.0;
  for (size_t i = 0; i < g.c1.size(); ++i) s += pair_norm(p, g.c1[i], g.c2[i]);
  return s;
}

ProblemInstance tv_problem(const TVModel& m) {
  if (!(m.mu > 0.0)) throw InvalidInputError("tv: mu must be positive");
  if (m.z.n < 2) throw InvalidInputError("tv: image side must be at least 2");
  ProblemInstance P;
  P.f = m.f ? m.f : make_zero(m.z.n * m.z.n);
  P.g = make_dp_support(m.p, m.z.n);
  P.L = grad_linop(m.z.n, m.mu);
  P.z = to_vec(m.z, Space::H);
  P.r = VecR(P.L.dim_out, Space::G);
  P.qualification_asserted = true;  // g is finite everywhere
  return P;
}

SolveResult tv_denoise(const TVModel& m, const DualFBConfig& cfg0) {
  ProblemInstance P = tv_problem(m);
  P.validate();
  DualFBConfig cfg = app_config(cfg0);
  cfg.a_err.validate("alpha_err");
  cfg.b_err.validate("b_err");
  const double mu = m.mu;
  const int n = m.z.n;

  // Step box in tau = mu * gamma form with its own epsilon.
  const double tau_max = 1.0 / (4.0 * mu);
  double eps_tv = cfg.epsilon > 0.0 ? mu * cfg.epsilon
                                    : std::min(0.05 * tau_max, 0.5 * std::min(1.0, 1.0 / (8.0 * mu)));
  if (!(eps_tv > 0.0 && eps_tv < std::min(1.0, 1.0 / (8.0 * mu))))
    throw InvalidInputError("tv: epsilon outside ]0, min(1, 1/(8 mu))[");
  const double tau_def = 0.95 * tau_max;
  auto tau_at = [&](int it) { return cfg.gamma ? mu * cfg.gamma(it) : tau_def; };
  auto lambda_at = [&](int it) { return cfg.lambda ? cfg.lambda(it) : 1.0; };

  const auto t0 = Clock::now();
  SolveResult res;
  VecR vflat = cfg.v0.empty() ? VecR(P.L.dim_out, Space::G) : cfg.v0.retagged(Space::G);
  if (vflat.size() != P.L.dim_out) throw InvalidInputError("tv: v0 dimension mismatch");
  GradField v = field_from_vec(vflat, n);
  detail::StopMonitor monitor{cfg};
  for (int it = 0;; ++it) {
    const double tau = tau_at(it);
    const double lambda = lambda_at(it);
    const double slack = 1e-12;
    if (!(tau >= eps_tv - slack && tau <= tau_max - eps_tv + slack))
      throw InvalidInputError("tv: tau schedule leaves [eps, 1/(4 mu) - eps] at n=" +
                              std::to_string(it));
    if (!(lambda >= eps_tv - slack && lambda <= 1.0 + slack))
      throw InvalidInputError("tv: lambda schedule leaves [eps, 1] at n=" + std::to_string(it));

    ImageGrid div_v = discrete_divergence(v);
    VecR xin = P.z;
    for (int i = 0; i < xin.size(); ++i) xin[i] += mu * div_v.px[static_cast<size_t>(i)];
    VecR xvec = P.f->prox(1.0, xin) + cfg.b_err.at(it, P.L.dim_in, Space::H);
    ImageGrid x = image_from_vec(xvec, n);

    GradField gx = discrete_gradient(x);
    GradField zeta = v;
    for (size_t i = 0; i < zeta.c1.size(); ++i) {
      zeta.c1[i] += tau * gx.c1[i];
      zeta.c2[i] += tau * gx.c2[i];
    }
    GradField proj = project_Dp(m.p, zeta);
    VecR an = cfg.a_err.at(it, P.L.dim_out, Space::G);
    GradField aerr = field_from_vec(an, n);
    GradField v_next = v;
    for (size_t i = 0; i < v.c1.size(); ++i) {
      v_next.c1[i] = v.c1[i] + lambda * (proj.c1[i] + aerr.c1[i] - v.c1[i]);
      v_next.c2[i] = v.c2[i] + lambda * (proj.c2[i] + aerr.c2[i] - v.c2[i]);
    }

    VecR v_next_flat = to_vec(v_next, Space::G);
    if (!v_next_flat.all_finite() || !xvec.all_finite())
      throw DivergenceError("tv_denoise: non-finite iterate at n=" + std::to_string(it), it);
    VecR v_flat = to_vec(v, Space::G);
    double delta = norm(v_next_flat - v_flat);
    res.trace.push_back(detail::make_trace_row(P, it, delta, v_next_flat, t0));
    if (cfg.record_iterates) {
      res.x_history.push_back(xvec);
      res.v_history.push_back(v_next_flat);
    }
    double vnorm = norm(v_flat);
    v = v_next;
    res.iterations = it + 1;
    if (auto reason = monitor.check(it, delta, vnorm, res.trace.back().gap)) {
      res.reason = *reason;
      break;
    }
  }
  res.v = to_vec(v, Space::G);
  res.x = recover_primal(P, res.v);
  return res;
}

}  // namespace proxdual
