// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "proxdual/convex_set.hpp"
#include "proxdual/linop.hpp"
#include "proxdual/scalar_fun.hpp"
#include "proxdual/vec.hpp"

namespace proxdual {

/// Proper lsc convex function with an exactly computable proximity operator.
/// Function and conjugate values are optional capabilities; absent values
/// are reported as std::nullopt, while +infinity is a legitimate value.
class ProxFunction {
 public:
  virtual ~ProxFunction() = default;

  virtual int dim() const = 0;

  /// argmin_y F(y) + (1/(2*gamma)) |x - y|^2.
  virtual VecR prox(double gamma, const VecR& x) const = 0;

  virtual std::optional<double> value(const VecR&) const { return std::nullopt; }
  virtual std::optional<double> conj_value(const VecR&) const { return std::nullopt; }

  /// Kinds whose conjugate prox has a direct formula (indicator/support
  /// pairs) override these; everyone else goes through the decomposition
  /// identity in prox_conjugate().
  virtual bool has_native_conj_prox() const { return false; }
  virtual VecR conj_prox_native(double /*gamma*/, const VecR& /*x*/) const;
};

using ProxFunPtr = std::shared_ptr<const ProxFunction>;

/// prox of gamma * F^* at x. Uses the native formula when available,
/// otherwise x - gamma * prox_{F/gamma}(x/gamma).
VecR prox_conjugate(const ProxFunction& F, double gamma, const VecR& x);

/// F(p) + |x-p|^2/2 at p = prox_F(x). Requires a value capability.
double moreau_envelope_value(const ProxFunction& F, const VecR& x);

// ---- catalog -------------------------------------------------------------

ProxFunPtr make_indicator(ConvexSetR C);
ProxFunPtr make_support(ConvexSetR C);
/// dist(x,C)^2 / (2*alpha)
ProxFunPtr make_dist_sq(ConvexSetR C, double alpha);
/// (|x|^2 - dist(x,C)^2) / (2*alpha)
ProxFunPtr make_sq_minus_dist(ConvexSetR C, double alpha);
/// phi(dist(x,C)), phi even
ProxFunPtr make_phi_of_dist(ScalarFun phi, ConvexSetR C);
/// support(C) + phi(|x|), phi even with bounded argmin set
ProxFunPtr make_support_plus_phi_norm(ConvexSetR C, ScalarFun phi);
/// <Ax,x>/2 + <x,b> + a0 with A self-adjoint positive (operator form);
/// the prox solves (Id + gamma*A) y = x - gamma*b by conjugate gradients.
ProxFunPtr make_quadratic(LinOp A, VecR b, double a0);
struct QuadraticTerm {
  double alpha;
  LinOp T;
  VecR r;
};
/// (1/2) sum_i alpha_i |T_i x - r_i|^2
ProxFunPtr make_sum_quadratics(std::vector<QuadraticTerm> terms, int dim);
/// sum_k phi_k(<x, o_k>) over orthonormal (o_k); directions orthogonal to
/// the o_k pass through unchanged.
ProxFunPtr make_separable_basis(std::vector<ScalarFun> phis, std::vector<VecR> basis);
/// psi(Mx) with M M^* = kappa * Id (verified numerically at construction).
ProxFunPtr make_tight_frame_composite(ProxFunPtr psi, LinOp M, double kappa);
/// phi applied coordinatewise.
ProxFunPtr make_scalar_lift(ScalarFun phi, int dim);
ProxFunPtr make_zero(int dim);

}  // namespace proxdual
