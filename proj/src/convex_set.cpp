// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/convex_set.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace proxdual {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

namespace detail {
struct AffineData {
  Eigen::MatrixXd A;          // m x n, full row rank
  Eigen::VectorXd c;          // m
  Eigen::LLT<Eigen::MatrixXd> llt;  // factor of A A^T
};
}  // namespace detail

ConvexSetR ConvexSetR::interval(double a, double b) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidInputError("interval: need finite a <= b");
  ConvexSetR s;
  s.kind_ = Kind::Interval;
  s.dim_ = 1;
  s.a_ = VecR{{a}};
  s.b_ = VecR{{b}};
  return s;
}

ConvexSetR ConvexSetR::box(VecR lo, VecR hi) {
  if (lo.size() != hi.size()) throw InvalidInputError("box: bound length mismatch");
  for (int i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw InvalidInputError("box: need lo <= hi");
  ConvexSetR s;
  s.kind_ = Kind::Box;
  s.dim_ = lo.size();
  s.a_ = std::move(lo);
  s.b_ = std::move(hi);
  return s;
}

ConvexSetR ConvexSetR::halfspace(VecR u, double eta) {
  check_finite(u, "halfspace normal");
  if (norm(u) == 0.0) throw InvalidInputError("halfspace: zero normal");
  ConvexSetR s;
  s.kind_ = Kind::Halfspace;
  s.dim_ = u.size();
  s.a_ = std::move(u);
  s.r_ = eta;
  return s;
}

ConvexSetR ConvexSetR::affine(std::vector<VecR> rows, VecR c) {
  if (rows.empty()) throw InvalidInputError("affine: no constraint rows");
  if (static_cast<int>(rows.size()) != c.size())
    throw InvalidInputError("affine: row/rhs count mismatch");
  const int n = rows[0].size();
  const int m = static_cast<int>(rows.size());
  if (m > n) throw StructuralError("affine: more rows than columns cannot have full row rank");
  auto data = std::make_shared<detail::AffineData>();
  data->A.resize(m, n);
  for (int i = 0; i < m; ++i) {
    if (rows[static_cast<size_t>(i)].size() != n) throw InvalidInputError("affine: ragged rows");
    for (int j = 0; j < n; ++j) data->A(i, j) = rows[static_cast<size_t>(i)][j];
  }
  data->c.resize(m);
  for (int i = 0; i < m; ++i) data->c(i) = c[i];
  Eigen::MatrixXd gram = data->A * data->A.transpose();
  data->llt.compute(gram);
  bool bad = data->llt.info() != Eigen::Success;
  if (!bad) {
    Eigen::VectorXd d = data->llt.matrixLLT().diagonal();
    if (d.minCoeff() <= 1e-12 * std::max(1.0, d.maxCoeff())) bad = true;
  }
  if (bad) throw StructuralError("affine: constraint matrix is rank deficient");
  ConvexSetR s;
  s.kind_ = Kind::Affine;
  s.dim_ = n;
  s.basis_ = std::move(rows);
  s.affine_ = std::move(data);
  return s;
}

ConvexSetR ConvexSetR::l2_ball(VecR center, double radius) {
  if (!(radius > 0.0)) throw InvalidInputError("l2_ball: radius must be positive");
  check_finite(center, "l2_ball center");
  ConvexSetR s;
  s.kind_ = Kind::L2Ball;
  s.dim_ = center.size();
  s.a_ = std::move(center);
  s.r_ = radius;
  return s;
}

ConvexSetR ConvexSetR::linf_ball(int dim, double radius) {
  if (!(radius > 0.0)) throw InvalidInputError("linf_ball: radius must be positive");
  ConvexSetR s;
  s.kind_ = Kind::LinfBall;
  s.dim_ = dim;
  s.r_ = radius;
  return s;
}

ConvexSetR ConvexSetR::l1_ball(int dim, double radius) {
  if (!(radius > 0.0)) throw InvalidInputError("l1_ball: radius must be positive");
  ConvexSetR s;
  s.kind_ = Kind::L1Ball;
  s.dim_ = dim;
  s.r_ = radius;
  return s;
}

ConvexSetR ConvexSetR::subspace(std::vector<VecR> onb) {
  if (onb.empty()) throw InvalidInputError("subspace: empty basis (use singleton for {0})");
  const int n = onb[0].size();
  for (size_t i = 0; i < onb.size(); ++i) {
    if (onb[i].size() != n) throw InvalidInputError("subspace: ragged basis");
    for (size_t j = 0; j <= i; ++j) {
      double d = dot(onb[i], onb[j]);
      double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(d - want) > 1e-10)
        throw StructuralError("subspace: basis is not orthonormal");
    }
  }
  ConvexSetR s;
  s.kind_ = Kind::Subspace;
  s.dim_ = n;
  s.basis_ = std::move(onb);
  return s;
}

ConvexSetR ConvexSetR::whole_space(int dim) {
  ConvexSetR s;
  s.kind_ = Kind::WholeSpace;
  s.dim_ = dim;
  return s;
}

ConvexSetR ConvexSetR::singleton(VecR c) {
  check_finite(c, "singleton point");
  ConvexSetR s;
  s.kind_ = Kind::Singleton;
  s.dim_ = c.size();
  s.a_ = std::move(c);
  return s;
}

ConvexSetR ConvexSetR::nonneg_orthant(int dim) {
  ConvexSetR s;
  s.kind_ = Kind::NonnegOrthant;
  s.dim_ = dim;
  return s;
}

VecR project_l1_ball(const VecR& x, double radius) {
  if (!(radius > 0.0)) throw InvalidInputError("project_l1_ball: radius must be positive");
  if (norm_1(x) <= radius) return x;
  const int n = x.size();
  std::vector<double> u(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = std::abs(x[i]);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (int k = 0; k < n; ++k) {
    cum += u[static_cast<size_t>(k)];
    double t = (cum - radius) / (k + 1);
    if (u[static_cast<size_t>(k)] - t > 0.0)
      theta = t;
    else
      break;
  }
  VecR p = x;
  for (int i = 0; i < n; ++i) {
    double m = std::abs(x[i]) - theta;
    p[i] = m > 0.0 ? (x[i] > 0.0 ? m : -m) : 0.0;
  }
  return p;
}

VecR ConvexSetR::project(const VecR& x) const {
  if (x.size() != dim_) throw InvalidInputError("ConvexSetR::project: dimension mismatch");
  switch (kind_) {
    case Kind::Interval: {
      VecR p = x;
      p[0] = std::clamp(x[0], a_[0], b_[0]);
      return p;
    }
    case Kind::Box: {
      VecR p = x;
      for (int i = 0; i < dim_; ++i) p[i] = std::clamp(x[i], a_[i], b_[i]);
      return p;
    }
    case Kind::Halfspace: {
      double viol = dot(x.retagged(a_.space()), a_) - r_;
      if (viol <= 0.0) return x;
      double uu = dot(a_, a_);
      VecR p = x;
      for (int i = 0; i < dim_; ++i) p[i] -= viol / uu * a_[i];
      return p;
    }
    case Kind::Affine: {
      Eigen::VectorXd xe(dim_);
      for (int i = 0; i < dim_; ++i) xe(i) = x[i];
      Eigen::VectorXd resid = affine_->A * xe - affine_->c;
      Eigen::VectorXd w = affine_->llt.solve(resid);
      Eigen::VectorXd pe = xe - affine_->A.transpose() * w;
      VecR p = x;
      for (int i = 0; i < dim_; ++i) p[i] = pe(i);
      return p;
    }
    case Kind::L2Ball: {
      VecR d = x - a_.retagged(x.space());
      double nd = norm(d);
      if (nd <= r_) return x;
      return a_.retagged(x.space()) + (r_ / nd) * d;
    }
    case Kind::LinfBall: {
      VecR p = x;
      for (int i = 0; i < dim_; ++i) p[i] = std::clamp(x[i], -r_, r_);
      return p;
    }
    case Kind::L1Ball:
      return project_l1_ball(x, r_);
    case Kind::Subspace: {
      VecR p(dim_, x.space());
      for (const VecR& o : basis_) {
        double c = dot(x, o.retagged(x.space()));
        for (int i = 0; i < dim_; ++i) p[i] += c * o[i];
      }
      return p;
    }
    case Kind::WholeSpace:
      return x;
    case Kind::Singleton:
      return a_.retagged(x.space());
    case Kind::NonnegOrthant: {
      VecR p = x;
      for (int i = 0; i < dim_; ++i) p[i] = std::max(x[i], 0.0);
      return p;
    }
  }
  return x;
}

double ConvexSetR::distance(const VecR& x) const { return norm(x - project(x)); }

bool ConvexSetR::contains(const VecR& x, double tol) const { return distance(x) <= tol; }

double ConvexSetR::support(const VecR& u) const {
  if (u.size() != dim_) throw InvalidInputError("ConvexSetR::support: dimension mismatch");
  const double tol = 1e-9 * (1.0 + norm(u));
  switch (kind_) {
    case Kind::Interval:
      return u[0] >= 0.0 ? b_[0] * u[0] : a_[0] * u[0];
    case Kind::Box: {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        if (u[i] == 0.0) continue;
        double edge = u[i] > 0.0 ? b_[i] : a_[i];
        if (!std::isfinite(edge)) return kInf;
        s += edge * u[i];
      }
      return s;
    }
    case Kind::Halfspace: {
      double t = dot(u, a_.retagged(u.space())) / dot(a_, a_);
      if (t < -tol) return kInf;
      t = std::max(t, 0.0);
      VecR residual = u - t * a_.retagged(u.space());
      if (norm(residual) > tol) return kInf;
      return t * r_;
    }
    case Kind::Affine: {
      // finite only for u in the row space of A
      Eigen::VectorXd ue(dim_);
      for (int i = 0; i < dim_; ++i) ue(i) = u[i];
      Eigen::VectorXd w = affine_->llt.solve(affine_->A * ue);
      Eigen::VectorXd resid = affine_->A.transpose() * w - ue;
      if (resid.norm() > tol) return kInf;
      return w.dot(affine_->c);
    }
    case Kind::L2Ball:
      return dot(a_.retagged(u.space()), u) + r_ * norm(u);
    case Kind::LinfBall:
      return r_ * norm_1(u);
    case Kind::L1Ball:
      return r_ * norm_inf(u);
    case Kind::Subspace:
      // finite (zero) exactly on the orthogonal complement
      return norm(project(u)) <= tol ? 0.0 : kInf;
    case Kind::WholeSpace:
      return norm(u) <= tol ? 0.0 : kInf;
    case Kind::Singleton:
      return dot(a_.retagged(u.space()), u);
    case Kind::NonnegOrthant: {
      for (int i = 0; i < dim_; ++i)
        if (u[i] > tol) return kInf;
      return 0.0;
    }
  }
  return kInf;
}

}  // namespace proxdual
