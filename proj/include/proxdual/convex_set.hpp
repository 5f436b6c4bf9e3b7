// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include "proxdual/vec.hpp"

namespace proxdual {

namespace detail {
struct AffineData;
}

/// Nonempty closed convex set with an exact projector.
class ConvexSetR {
 public:
  enum class Kind {
    Interval,
    Box,
    Halfspace,
    Affine,
    L2Ball,
    LinfBall,
    L1Ball,
    Subspace,
    WholeSpace,
    Singleton,
    NonnegOrthant
  };

  static ConvexSetR interval(double a, double b);
  static ConvexSetR box(VecR lo, VecR hi);
  /// {x : <x,u> <= eta}, u nonzero.
  static ConvexSetR halfspace(VecR u, double eta);
  /// {x : Ax = c} with the rows of A linearly independent.
  static ConvexSetR affine(std::vector<VecR> rows, VecR c);
  static ConvexSetR l2_ball(VecR center, double radius);
  static ConvexSetR linf_ball(int dim, double radius);
  static ConvexSetR l1_ball(int dim, double radius);
  /// Span of the given orthonormal vectors.
  static ConvexSetR subspace(std::vector<VecR> onb);
  static ConvexSetR whole_space(int dim);
  static ConvexSetR singleton(VecR c);
  static ConvexSetR nonneg_orthant(int dim);

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }

  VecR project(const VecR& x) const;
  double distance(const VecR& x) const;
  bool contains(const VecR& x, double tol) const;

  /// Support function value; +infinity where the set is unbounded in the
  /// direction u. Cone/subspace-like kinds use a small relative tolerance
  /// to decide membership of u in the finite-support region.
  double support(const VecR& u) const;

 private:
  ConvexSetR() = default;
  Kind kind_ = Kind::WholeSpace;
  int dim_ = 0;
  VecR a_, b_;         // payload vectors (bounds, center, normal, point)
  double r_ = 0.0;     // radius / offset
  std::vector<VecR> basis_;  // subspace basis / affine rows
  std::shared_ptr<const detail::AffineData> affine_;
};

/// Exact sort-and-threshold projection onto the l1 ball of given radius.
VecR project_l1_ball(const VecR& x, double radius);

}  // namespace proxdual
