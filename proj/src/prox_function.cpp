// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/prox_function.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace proxdual {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double membership_tol(const VecR& x) { return 1e-8 * (1.0 + norm(x)); }

VecR op_apply(const LinOp& T, const VecR& x) { return T.apply(x.retagged(T.in_space)); }
VecR op_adjoint(const LinOp& T, const VecR& y) { return T.apply_adjoint(y.retagged(T.out_space)); }

// Solves (Id + gamma*S) y = rhs for self-adjoint positive S given as an action.
VecR cg_identity_plus(const std::function<VecR(const VecR&)>& S, double gamma, const VecR& rhs,
                      int max_iter, double rel_tol) {
  const double bnorm = norm(rhs);
  VecR y(rhs.size(), rhs.space());
  if (bnorm == 0.0) return y;
  VecR r = rhs;
  VecR p = r;
  double rs = dot(r, r);
  for (int it = 0; it < max_iter; ++it) {
    VecR ap = p + gamma * S(p);
    double pap = dot(p, ap);
    if (!(pap > 0.0))
      throw NumericalError("cg: operator is not positive definite on the Krylov space",
                           std::sqrt(rs) / bnorm);
    double a = rs / pap;
    y += a * p;
    r -= a * ap;
    double rs_next = dot(r, r);
    if (std::sqrt(rs_next) <= rel_tol * bnorm) return y;
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  throw NumericalError("cg: iteration cap reached before tolerance", std::sqrt(rs) / bnorm);
}

class IndicatorFn final : public ProxFunction {
 public:
  explicit IndicatorFn(ConvexSetR C) : C_(std::move(C)) {}
  int dim() const override { return C_.dim(); }
  VecR prox(double, const VecR& x) const override { return C_.project(x); }
  std::optional<double> value(const VecR& x) const override {
    return C_.contains(x, membership_tol(x)) ? 0.0 : kInf;
  }
  std::optional<double> conj_value(const VecR& u) const override { return C_.support(u); }
  bool has_native_conj_prox() const override { return true; }
  VecR conj_prox_native(double gamma, const VecR& x) const override {
    return x - gamma * C_.project((1.0 / gamma) * x);
  }

 private:
  ConvexSetR C_;
};

class SupportFn final : public ProxFunction {
 public:
  explicit SupportFn(ConvexSetR C) : C_(std::move(C)) {}
  int dim() const override { return C_.dim(); }
  VecR prox(double gamma, const VecR& x) const override {
    return x - gamma * C_.project((1.0 / gamma) * x);
  }
  std::optional<double> value(const VecR& x) const override { return C_.support(x); }
  std::optional<double> conj_value(const VecR& u) const override {
    return C_.contains(u, membership_tol(u)) ? 0.0 : kInf;
  }
  bool has_native_conj_prox() const override { return true; }
  VecR conj_prox_native(double, const VecR& x) const override { return C_.project(x); }

 private:
  ConvexSetR C_;
};

class DistSqFn final : public ProxFunction {
 public:
  DistSqFn(ConvexSetR C, double alpha) : C_(std::move(C)), alpha_(alpha) {
    if (!(alpha > 0.0)) throw InvalidInputError("dist_sq: alpha must be positive");
  }
  int dim() const override { return C_.dim(); }
  VecR prox(double gamma, const VecR& x) const override {
    double t = gamma / (gamma + alpha_);
    return x + t * (C_.project(x) - x);
  }
  std::optional<double> value(const VecR& x) const override {
    double d = C_.distance(x);
    return d * d / (2.0 * alpha_);
  }
  std::optional<double> conj_value(const VecR& u) const override {
    return C_.support(u) + alpha_ * dot(u, u) / 2.0;
  }

 private:
  ConvexSetR C_;
  double alpha_;
};

class SqMinusDistFn final : public ProxFunction {
 public:
  SqMinusDistFn(ConvexSetR C, double alpha) : C_(std::move(C)), alpha_(alpha) {
    if (!(alpha > 0.0)) throw InvalidInputError("sq_minus_dist: alpha must be positive");
  }
  int dim() const override { return C_.dim(); }
  VecR prox(double gamma, const VecR& x) const override {
    return x - (gamma / alpha_) * C_.project((alpha_ / (alpha_ + gamma)) * x);
  }
  std::optional<double> value(const VecR& x) const override {
    double d = C_.distance(x);
    return (dot(x, x) - d * d) / (2.0 * alpha_);
  }
  std::optional<double> conj_value(const VecR& u) const override {
    VecR au = alpha_ * u;
    if (!C_.contains(au, membership_tol(au))) return kInf;
    return alpha_ * dot(u, u) / 2.0;
  }

 private:
  ConvexSetR C_;
  double alpha_;
};

class PhiOfDistFn final : public ProxFunction {
 public:
  PhiOfDistFn(ScalarFun phi, ConvexSetR C) : phi_(std::move(phi)), C_(std::move(C)) {
    if (!phi_.is_even()) throw InvalidInputError("phi_of_dist: phi must be even");
    if (!phi_.max_subgradient_at_zero())
      throw InvalidInputError("phi_of_dist: phi must have a bounded subdifferential at 0");
  }
  int dim() const override { return C_.dim(); }
  VecR prox(double gamma, const VecR& x) const override {
    ScalarFun pg = phi_.scaled(gamma);
    VecR pc = C_.project(x);
    double d = norm(x - pc);
    double thresh = *pg.max_subgradient_at_zero();
    if (d > thresh) {
      double t = scalar_prox_conj_unit(pg, d);
      return x + (t / d) * (pc - x);
    }
    if (d > 0.0) return pc;
    return x;
  }
  std::optional<double> value(const VecR& x) const override { return phi_.value(C_.distance(x)); }
  std::optional<double> conj_value(const VecR& u) const override {
    auto pc = phi_.conj_value(norm(u));
    if (!pc) return std::nullopt;
    return C_.support(u) + *pc;
  }

 private:
  ScalarFun phi_;
  ConvexSetR C_;
};

class SupportPlusPhiNormFn final : public ProxFunction {
 public:
  SupportPlusPhiNormFn(ConvexSetR C, ScalarFun phi) : C_(std::move(C)), phi_(std::move(phi)) {
    if (!phi_.is_even()) throw InvalidInputError("support_plus_phi_norm: phi must be even");
    // The middle branch compares distances against max Argmin phi, so the
    // argmin set must be bounded and known.
    if (!phi_.max_argmin())
      throw InvalidInputError("support_plus_phi_norm: phi must have a bounded argmin set");
  }
  int dim() const override { return C_.dim(); }
  VecR prox(double gamma, const VecR& x) const override {
    // gamma*(support(C) + phi(|.|)) = support(gamma*C) + (gamma*phi)(|.|)
    ScalarFun pg = phi_.scaled(gamma);
    VecR pgc = gamma * C_.project((1.0 / gamma) * x);
    double d = norm(x - pgc);
    double m = *pg.max_argmin();
    if (d > m) return (pg.prox_unit(d) / d) * (x - pgc);
    if (d > 0.0) return x - pgc;
    return VecR(x.size(), x.space());
  }
  std::optional<double> value(const VecR& x) const override {
    return C_.support(x) + phi_.value(norm(x));
  }

 private:
  ConvexSetR C_;
  ScalarFun phi_;
};

class QuadraticFn final : public ProxFunction {
 public:
  QuadraticFn(LinOp A, VecR b, double a0) : A_(std::move(A)), b_(std::move(b)), a0_(a0) {
    if (A_.dim_in != A_.dim_out || A_.dim_in != b_.size())
      throw InvalidInputError("quadratic: A must be square and match b");
  }
  int dim() const override { return b_.size(); }
  VecR prox(double gamma, const VecR& x) const override {
    VecR rhs = x - gamma * b_.retagged(x.space());
    auto S = [this, &x](const VecR& p) {
      return op_apply(A_, p).retagged(x.space());
    };
    return cg_identity_plus(S, gamma, rhs, 10 * dim(), 1e-12);
  }
  std::optional<double> value(const VecR& x) const override {
    VecR ax = op_apply(A_, x).retagged(x.space());
    return dot(ax, x) / 2.0 + dot(b_.retagged(x.space()), x) + a0_;
  }

 private:
  LinOp A_;
  VecR b_;
  double a0_;
};

class SumQuadraticsFn final : public ProxFunction {
 public:
  SumQuadraticsFn(std::vector<QuadraticTerm> terms, int dim) : terms_(std::move(terms)), dim_(dim) {
    for (const auto& t : terms_) {
      if (!(t.alpha > 0.0)) throw InvalidInputError("sum_quadratics: weights must be positive");
      if (t.T.dim_in != dim_) throw InvalidInputError("sum_quadratics: operator domain mismatch");
      if (t.T.dim_out != t.r.size())
        throw InvalidInputError("sum_quadratics: target dimension mismatch");
    }
  }
  int dim() const override { return dim_; }
  VecR prox(double gamma, const VecR& x) const override {
    VecR rhs = x;
    for (const auto& t : terms_)
      rhs += (gamma * t.alpha) * op_adjoint(t.T, t.r.retagged(t.T.out_space)).retagged(x.space());
    auto S = [this, &x](const VecR& p) {
      VecR s(p.size(), x.space());
      for (const auto& t : terms_)
        s += t.alpha * op_adjoint(t.T, op_apply(t.T, p)).retagged(x.space());
      return s;
    };
    return cg_identity_plus(S, gamma, rhs, 10 * dim_, 1e-12);
  }
  std::optional<double> value(const VecR& x) const override {
    double s = 0.0;
    for (const auto& t : terms_) {
      VecR d = op_apply(t.T, x) - t.r.retagged(t.T.out_space);
      s += t.alpha * dot(d, d) / 2.0;
    }
    return s;
  }

 private:
  std::vector<QuadraticTerm> terms_;
  int dim_;
};

class SeparableBasisFn final : public ProxFunction {
 public:
  SeparableBasisFn(std::vector<ScalarFun> phis, std::vector<VecR> basis)
      : phis_(std::move(phis)), basis_(std::move(basis)) {
    if (phis_.empty() || phis_.size() != basis_.size())
      throw InvalidInputError("separable_basis: need one scalar function per basis vector");
    dim_ = basis_[0].size();
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].size() != dim_) throw InvalidInputError("separable_basis: ragged basis");
      for (size_t j = 0; j <= i; ++j) {
        double d = dot(basis_[i], basis_[j].retagged(basis_[i].space()));
        double want = (i == j) ? 1.0 : 0.0;
        if (std::abs(d - want) > 1e-10)
          throw StructuralError("separable_basis: basis is not orthonormal");
      }
    }
  }
  int dim() const override { return dim_; }
  VecR prox(double gamma, const VecR& x) const override {
    VecR y = x;
    for (size_t k = 0; k < basis_.size(); ++k) {
      VecR o = basis_[k].retagged(x.space());
      double c = dot(x, o);
      double pi = scalar_prox(phis_[k], gamma, c);
      y += (pi - c) * o;
    }
    return y;
  }
  std::optional<double> value(const VecR& x) const override {
    double s = 0.0;
    for (size_t k = 0; k < basis_.size(); ++k)
      s += phis_[k].value(dot(x, basis_[k].retagged(x.space())));
    return s;
  }
  std::optional<double> conj_value(const VecR& u) const override {
    VecR resid = u;
    double s = 0.0;
    for (size_t k = 0; k < basis_.size(); ++k) {
      VecR o = basis_[k].retagged(u.space());
      double c = dot(u, o);
      resid -= c * o;
      auto cv = phis_[k].conj_value(c);
      if (!cv) return std::nullopt;
      s += *cv;
    }
    if (norm(resid) > 1e-9 * (1.0 + norm(u))) return kInf;
    return s;
  }

 private:
  std::vector<ScalarFun> phis_;
  std::vector<VecR> basis_;
  int dim_ = 0;
};

class TightFrameFn final : public ProxFunction {
 public:
  TightFrameFn(ProxFunPtr psi, LinOp M, double kappa)
      : psi_(std::move(psi)), M_(std::move(M)), kappa_(kappa) {
    if (!psi_) throw InvalidInputError("tight_frame_composite: missing inner function");
    if (!(kappa > 0.0)) throw InvalidInputError("tight_frame_composite: kappa must be positive");
    if (psi_->dim() != M_.dim_out)
      throw InvalidInputError("tight_frame_composite: inner function dimension mismatch");
    std::mt19937_64 rng(0x7f3a2d11ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int probe = 0; probe < 5; ++probe) {
      VecR y(M_.dim_out, M_.out_space);
      for (int i = 0; i < y.size(); ++i) y[i] = gauss(rng);
      VecR mmty = op_apply(M_, op_adjoint(M_, y)).retagged(y.space());
      if (norm(mmty - kappa_ * y) > 1e-8 * (1.0 + kappa_ * norm(y)))
        throw StructuralError("tight_frame_composite: M M* != kappa * Id");
    }
  }
  int dim() const override { return M_.dim_in; }
  VecR prox(double gamma, const VecR& x) const override {
    VecR mx = op_apply(M_, x);
    VecR inner = psi_->prox(kappa_ * gamma, mx);
    return x + (1.0 / kappa_) * op_adjoint(M_, inner - mx).retagged(x.space());
  }
  std::optional<double> value(const VecR& x) const override { return psi_->value(op_apply(M_, x)); }

 private:
  ProxFunPtr psi_;
  LinOp M_;
  double kappa_;
};

class ScalarLiftFn final : public ProxFunction {
 public:
  ScalarLiftFn(ScalarFun phi, int dim) : phi_(std::move(phi)), dim_(dim) {
    if (dim <= 0) throw InvalidInputError("scalar_lift: dimension must be positive");
  }
  int dim() const override { return dim_; }
  VecR prox(double gamma, const VecR& x) const override {
    ScalarFun pg = phi_.scaled(gamma);
    VecR y = x;
    for (int i = 0; i < x.size(); ++i) y[i] = pg.prox_unit(x[i]);
    return y;
  }
  std::optional<double> value(const VecR& x) const override {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) s += phi_.value(x[i]);
    return s;
  }
  std::optional<double> conj_value(const VecR& u) const override {
    double s = 0.0;
    for (int i = 0; i < u.size(); ++i) {
      auto cv = phi_.conj_value(u[i]);
      if (!cv) return std::nullopt;
      s += *cv;
    }
    return s;
  }

 private:
  ScalarFun phi_;
  int dim_;
};

class ZeroFn final : public ProxFunction {
 public:
  explicit ZeroFn(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  VecR prox(double, const VecR& x) const override { return x; }
  std::optional<double> value(const VecR&) const override { return 0.0; }
  std::optional<double> conj_value(const VecR& u) const override {
    return norm(u) <= 1e-9 * (1.0 + norm(u)) ? 0.0 : kInf;
  }
  bool has_native_conj_prox() const override { return true; }
  VecR conj_prox_native(double, const VecR& x) const override {
    return VecR(x.size(), x.space());
  }

 private:
  int dim_;
};

}  // namespace

VecR ProxFunction::conj_prox_native(double, const VecR&) const {
  throw CapabilityError("this kind has no native conjugate prox");
}

VecR prox_conjugate(const ProxFunction& F, double gamma, const VecR& x) {
  if (!(gamma > 0.0)) throw InvalidInputError("prox_conjugate: gamma must be positive");
  if (F.has_native_conj_prox()) return F.conj_prox_native(gamma, x);
  return x - gamma * F.prox(1.0 / gamma, (1.0 / gamma) * x);
}

double moreau_envelope_value(const ProxFunction& F, const VecR& x) {
  VecR p = F.prox(1.0, x);
  auto v = F.value(p);
  if (!v) throw CapabilityError("moreau_envelope_value: function has no value capability");
  VecR d = x - p;
  return *v + dot(d, d) / 2.0;
}

ProxFunPtr make_indicator(ConvexSetR C) { return std::make_shared<IndicatorFn>(std::move(C)); }
ProxFunPtr make_support(ConvexSetR C) { return std::make_shared<SupportFn>(std::move(C)); }
ProxFunPtr make_dist_sq(ConvexSetR C, double alpha) {
  return std::make_shared<DistSqFn>(std::move(C), alpha);
}
ProxFunPtr make_sq_minus_dist(ConvexSetR C, double alpha) {
  return std::make_shared<SqMinusDistFn>(std::move(C), alpha);
}
ProxFunPtr make_phi_of_dist(ScalarFun phi, ConvexSetR C) {
  return std::make_shared<PhiOfDistFn>(std::move(phi), std::move(C));
}
ProxFunPtr make_support_plus_phi_norm(ConvexSetR C, ScalarFun phi) {
  return std::make_shared<SupportPlusPhiNormFn>(std::move(C), std::move(phi));
}
ProxFunPtr make_quadratic(LinOp A, VecR b, double a0) {
  return std::make_shared<QuadraticFn>(std::move(A), std::move(b), a0);
}
ProxFunPtr make_sum_quadratics(std::vector<QuadraticTerm> terms, int dim) {
  return std::make_shared<SumQuadraticsFn>(std::move(terms), dim);
}
ProxFunPtr make_separable_basis(std::vector<ScalarFun> phis, std::vector<VecR> basis) {
  return std::make_shared<SeparableBasisFn>(std::move(phis), std::move(basis));
}
ProxFunPtr make_tight_frame_composite(ProxFunPtr psi, LinOp M, double kappa) {
  return std::make_shared<TightFrameFn>(std::move(psi), std::move(M), kappa);
}
ProxFunPtr make_scalar_lift(ScalarFun phi, int dim) {
  return std::make_shared<ScalarLiftFn>(std::move(phi), dim);
}
ProxFunPtr make_zero(int dim) { return std::make_shared<ZeroFn>(dim); }

}  // namespace proxdual
