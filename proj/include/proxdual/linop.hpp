// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "proxdual/vec.hpp"

namespace proxdual {

/// Bounded linear operator given by its forward and adjoint actions plus an
/// upper bound on its operator norm. norm_bound need not be tight; the
/// solver only uses it to size admissible step ranges.
struct LinOp {
  int dim_in = 0;
  int dim_out = 0;
  Space in_space = Space::H;
  Space out_space = Space::G;
  double norm_bound = 0.0;
  std::function<VecR(const VecR&)> fwd;
  std::function<VecR(const VecR&)> adj;

  VecR apply(const VecR& x) const;
  VecR apply_adjoint(const VecR& y) const;
};

/// Identity between spaces of equal dimension (possibly retagging).
LinOp identity_op(int n, Space in = Space::H, Space out = Space::G);

/// x |-> (d_i x_i). norm_bound = max |d_i|.
LinOp diagonal_op(const std::vector<double>& d, Space in = Space::H, Space out = Space::G);

/// x |-> (<x, rows_i>)_i with adjoint v |-> sum v_i rows_i.
/// norm_bound is the Frobenius norm of the row stack.
LinOp from_rows(const std::vector<VecR>& rows, Space in = Space::H, Space out = Space::G);

/// c * T, with norm_bound scaled by |c|.
LinOp scaled_op(const LinOp& T, double c);

}  // namespace proxdual
