// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>

#include "proxdual/image.hpp"
#include "proxdual/opnorm.hpp"

namespace proxdual::oracle {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Ternary search for the minimum of a convex 1-d slice; tolerant of
// +infinity values off the domain.
double ternary_min(const std::function<double(double)>& h, double lo, double hi, int iters) {
  for (int it = 0; it < iters; ++it) {
    double m1 = lo + (hi - lo) / 3.0;
    double m2 = hi - (hi - lo) / 3.0;
    if (h(m1) <= h(m2))
      hi = m2;
    else
      lo = m1;
  }
  return (lo + hi) / 2.0;
}
}  // namespace

void GridSpec::validate() const {
  if (lo.empty() || lo.size() != hi.size() || lo.size() > 3)
    throw InvalidInputError("GridSpec: need 1..3 dimensions with matching bounds");
  if (!(step > 0.0)) throw InvalidInputError("GridSpec: step must be positive");
  double points = 1.0;
  for (size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] < hi[i])) throw InvalidInputError("GridSpec: need lo < hi");
    points *= std::floor((hi[i] - lo[i]) / step) + 1.0;
  }
  if (points > 1e7) throw InvalidInputError("GridSpec: more than 1e7 grid points");
}

double grid_argmin_scalar(const ScalarFun& phi, double gamma, double xi, const GridSpec& gs) {
  gs.validate();
  if (gs.lo.size() != 1) throw InvalidInputError("grid_argmin_scalar: spec must be 1-d");
  auto obj = [&](double y) { return phi.value(y) + (xi - y) * (xi - y) / (2.0 * gamma); };
  const double lo = gs.lo[0], hi = gs.hi[0];
  const int count = static_cast<int>(std::floor((hi - lo) / gs.step)) + 1;
  int best_i = -1;
  double best = kInf;
  for (int i = 0; i < count; ++i) {
    double y = lo + i * gs.step;
    double f = obj(y);
    if (f < best) {
      best = f;
      best_i = i;
    }
  }
  if (best_i < 0) throw InvalidInputError("grid_argmin_scalar: objective infinite on the range");
  if (!gs.allow_boundary_argmin && (best_i == 0 || best_i == count - 1))
    throw InvalidInputError("grid_argmin_scalar: argmin on range boundary, widen the range");
  double y = lo + best_i * gs.step;
  double wlo = std::max(lo, y - gs.step), whi = std::min(hi, y + gs.step);
  for (int round = 0; round < gs.refine_rounds; ++round) {
    y = ternary_min(obj, wlo, whi, 40);
    wlo = std::max(lo, y - gs.step / (1 << (round + 1)));
    whi = std::min(hi, y + gs.step / (1 << (round + 1)));
  }
  return y;
}

VecR primal_grid_oracle(const ProblemInstance& P, const GridSpec& gs) {
  gs.validate();
  const int d = static_cast<int>(gs.lo.size());
  if (P.L.dim_in != d) throw InvalidInputError("primal_grid_oracle: dimension mismatch");

  auto obj = [&](const VecR& x) -> double {
    auto fv = P.f->value(x);
    if (!fv) throw CapabilityError("primal_grid_oracle: f has no value capability");
    if (!std::isfinite(*fv)) return kInf;
    auto gv = P.g->value(P.L.apply(x) - P.r);
    if (!gv) throw CapabilityError("primal_grid_oracle: g has no value capability");
    if (!std::isfinite(*gv)) return kInf;
    VecR dz = x - P.z;
    return *fv + *gv + dot(dz, dz) / 2.0;
  };

  std::vector<int> counts(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    counts[static_cast<size_t>(i)] =
        static_cast<int>(std::floor((gs.hi[static_cast<size_t>(i)] - gs.lo[static_cast<size_t>(i)]) / gs.step)) + 1;

  VecR x(d, P.L.in_space);
  VecR best_x = x;
  double best = kInf;
  bool on_boundary = false;
  std::vector<int> idx(static_cast<size_t>(d), 0);
  while (true) {
    for (int i = 0; i < d; ++i)
      x[i] = gs.lo[static_cast<size_t>(i)] + idx[static_cast<size_t>(i)] * gs.step;
    double f = obj(x);
    if (f < best) {
      best = f;
      best_x = x;
      on_boundary = false;
      for (int i = 0; i < d; ++i)
        if (idx[static_cast<size_t>(i)] == 0 ||
            idx[static_cast<size_t>(i)] == counts[static_cast<size_t>(i)] - 1)
          on_boundary = true;
    }
    int i = 0;
    for (; i < d; ++i) {
      if (++idx[static_cast<size_t>(i)] < counts[static_cast<size_t>(i)]) break;
      idx[static_cast<size_t>(i)] = 0;
    }
    if (i == d) break;
  }
  if (!std::isfinite(best))
    throw InvalidInputError("primal_grid_oracle: objective infinite on the whole range");
  if (on_boundary && !gs.allow_boundary_argmin)
    throw InvalidInputError("primal_grid_oracle: argmin on range boundary, widen the range");

  // Coordinatewise ternary refinement around the winning cell.
  VecR y = best_x;
  for (int round = 0; round < gs.refine_rounds; ++round) {
    double w = gs.step / (1 << round);
    for (int i = 0; i < d; ++i) {
      double lo = std::max(gs.lo[static_cast<size_t>(i)], y[i] - w);
      double hi = std::min(gs.hi[static_cast<size_t>(i)], y[i] + w);
      auto slice = [&](double t) {
        VecR p = y;
        p[i] = t;
        return obj(p);
      };
      y[i] = ternary_min(slice, lo, hi, 40);
    }
  }
  return obj(y) <= best ? y : best_x;
}

std::vector<std::pair<VecR, VecR>> dykstra_reference(const ProxFunction& f,
                                                     const ProxFunction& g, const VecR& z,
                                                     int iters) {
  if (f.dim() != z.size() || g.dim() != z.size())
    throw InvalidInputError("dykstra_reference: dimension mismatch");
  std::vector<std::pair<VecR, VecR>> out;
  out.reserve(static_cast<size_t>(iters));
  VecR y = z;
  VecR q(z.size(), z.space());
  VecR p(z.size(), z.space());
  for (int n = 0; n < iters; ++n) {
    VecR x = f.prox(1.0, y + q);
    q = y + q - x;
    y = g.prox(1.0, x + p);
    p = x + p - y;
    out.emplace_back(x, p);
  }
  return out;
}

VecR min_norm_closed_form(const std::vector<VecR>& s, const std::vector<double>& rho) {
  if (s.empty() || s.size() != rho.size())
    throw InvalidInputError("min_norm_closed_form: need one measurement per vector");
  const int m = static_cast<int>(s.size());
  const int n = s[0].size();
  Eigen::MatrixXd L(m, n);
  for (int i = 0; i < m; ++i) {
    if (s[static_cast<size_t>(i)].size() != n)
      throw InvalidInputError("min_norm_closed_form: ragged measurement vectors");
    for (int j = 0; j < n; ++j) L(i, j) = s[static_cast<size_t>(i)][j];
  }
  Eigen::VectorXd r(m);
  for (int i = 0; i < m; ++i) r(i) = rho[static_cast<size_t>(i)];
  Eigen::MatrixXd gram = L * L.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  bool bad = llt.info() != Eigen::Success;
  if (!bad) {
    Eigen::VectorXd dg = llt.matrixLLT().diagonal();
    if (dg.minCoeff() <= 1e-12 * std::max(1.0, dg.maxCoeff())) bad = true;
  }
  if (bad) throw StructuralError("min_norm_closed_form: measurement rows are rank deficient");
  Eigen::VectorXd x = L.transpose() * llt.solve(r);
  VecR out(n, Space::H);
  for (int j = 0; j < n; ++j) out[j] = x(j);
  return out;
}

namespace {
bool verify_prox_grid(std::ostream& out) {
  std::vector<std::pair<std::string, ScalarFun>> kinds = {
      {"power(1)", ScalarFun::power(1.0, 0.7)},
      {"power(4/3)", ScalarFun::power(4.0 / 3.0, 0.9)},
      {"power(3/2)", ScalarFun::power(1.5, 1.1)},
      {"power(2)", ScalarFun::power(2.0, 0.6)},
      {"power(3)", ScalarFun::power(3.0, 0.4)},
      {"power(4)", ScalarFun::power(4.0, 0.8)},
      {"neg_log", ScalarFun::neg_log(0.9)},
      {"log_barrier", ScalarFun::log_barrier(2.5)},
      {"huber", ScalarFun::huber(1.2, 0.8)},
      {"plus_support_interval", ScalarFun::plus_support_interval(
                                    ScalarFun::power(2.0, 0.5), -0.4, 0.9)},
      {"plus_indicator_interval", ScalarFun::plus_indicator_interval(
                                      ScalarFun::power(2.0, 0.5), -1.0, 1.5)},
  };
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ug(0.1, 3.0), ux(-4.0, 4.0);
  bool ok = true;
  for (auto& [name, phi] : kinds) {
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      double gamma = ug(rng);
      double xi = ux(rng);
      GridSpec gs;
      if (phi.kind() == ScalarFun::Kind::NegLog) {
        gs.lo = {1e-4};
        gs.hi = {12.0};
      } else if (phi.kind() == ScalarFun::Kind::LogBarrier) {
        gs.lo = {-2.5 + 1e-9};
        gs.hi = {2.5 - 1e-9};
        gs.allow_boundary_argmin = true;
      } else {
        gs.lo = {-8.0};
        gs.hi = {8.0};
      }
      gs.step = 1e-3;
      double want = grid_argmin_scalar(phi, gamma, xi, gs);
      double got = scalar_prox(phi, gamma, xi);
      worst = std::max(worst, std::abs(want - got));
    }
    bool pass = worst <= 1e-5;
    ok = ok && pass;
    out << (pass ? "[ok]  " : "[fail] ") << "prox-grid " << name << " max |prox - grid| = "
        << worst << "\n";
  }
  return ok;
}

bool verify_adjoint(std::ostream& out) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 30; ++t) {
    ImageGrid x(8);
    GradField y(8);
    for (auto& v : x.px) v = gauss(rng);
    for (auto& v : y.c1) v = gauss(rng);
    for (auto& v : y.c2) v = gauss(rng);
    GradField gx = discrete_gradient(x);
    ImageGrid dy = discrete_divergence(y);
    double lhs = dot(gx, y), rhs = -dot(x, dy);
    double nx = norm(x), ny = std::sqrt(dot(y, y));
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + nx * ny));
  }
  bool pass = worst <= 1e-12;
  ok = ok && pass;
  out << (pass ? "[ok]  " : "[fail] ") << "adjoint grad/div defect = " << worst << "\n";
  for (int n : {4, 8, 16}) {
    double est = power_iteration_norm(grad_linop(n, 1.0), 200, 11);
    bool p2 = est <= 2.0 * std::sqrt(2.0) + 1e-12;
    ok = ok && p2;
    out << (p2 ? "[ok]  " : "[fail] ") << "gradient norm estimate N=" << n << ": " << est
        << " <= 2*sqrt(2)\n";
  }
  return ok;
}

bool verify_dykstra(std::ostream& out) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  bool ok = true;
  for (int t = 0; t < 5; ++t) {
    VecR lo{{u(rng) - 1.0, u(rng) - 1.0}};
    VecR hi{{lo[0] + 1.0 + u(rng) * 0.5 + 0.6, lo[1] + 1.0 + u(rng) * 0.5 + 0.6}};
    VecR nrm{{u(rng) + 1.5, u(rng)}};
    auto f = make_indicator(ConvexSetR::box(lo, hi));
    auto g = make_indicator(ConvexSetR::halfspace(nrm, u(rng)));
    VecR z{{2.0 * u(rng), 2.0 * u(rng)}};
    auto ref = dykstra_reference(*f, *g, z, 200);
    SolveResult got = solve_dykstra_mode(*f, *g, z, 200, 0.0, true);
    // An exact fixed point stops the solver early; past that point the
    // reference no longer moves either, so compare the common prefix.
    double worst = 0.0;
    size_t common = std::min(ref.size(), got.x_history.size());
    for (size_t n = 0; n < common; ++n) {
      worst = std::max(worst, norm(got.x_history[n] - ref[n].first));
      worst = std::max(worst, norm(got.v_history[n] - ref[n].second));
    }
    for (size_t n = common; n < ref.size(); ++n)
      worst = std::max(worst, norm(ref[n].first - ref[common - 1].first));
    bool pass = worst <= 1e-12;
    ok = ok && pass;
    out << (pass ? "[ok]  " : "[fail] ") << "dykstra pair " << t
        << " max iterate defect = " << worst << "\n";
  }
  return ok;
}
}  // namespace

bool run_verify_suite(const std::string& name, std::ostream& out) {
  if (name == "prox-grid") return verify_prox_grid(out);
  if (name == "adjoint") return verify_adjoint(out);
  if (name == "dykstra") return verify_dykstra(out);
  if (name == "all") {
    bool a = verify_prox_grid(out);
    bool b = verify_adjoint(out);
    bool c = verify_dykstra(out);
    return a && b && c;
  }
  throw InvalidInputError("unknown verify suite: " + name);
}

}  // namespace proxdual::oracle
