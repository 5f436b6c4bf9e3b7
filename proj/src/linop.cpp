// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/linop.hpp"

#include <cmath>
#include <string>

namespace proxdual {

VecR LinOp::apply(const VecR& x) const {
  if (x.size() != dim_in || x.space() != in_space)
    throw InvalidInputError("LinOp::apply: input not in the operator's domain");
  VecR y = fwd(x);
  if (y.size() != dim_out)
    throw StructuralError("LinOp::apply: forward produced wrong dimension " +
                          std::to_string(y.size()) + ", expected " + std::to_string(dim_out));
  return y.retagged(out_space);
}

VecR LinOp::apply_adjoint(const VecR& y) const {
  if (y.size() != dim_out || y.space() != out_space)
    throw InvalidInputError("LinOp::apply_adjoint: input not in the operator's codomain");
  VecR x = adj(y);
  if (x.size() != dim_in)
    throw StructuralError("LinOp::apply_adjoint: adjoint produced wrong dimension " +
                          std::to_string(x.size()) + ", expected " + std::to_string(dim_in));
  return x.retagged(in_space);
}

LinOp identity_op(int n, Space in, Space out) {
  LinOp T;
  T.dim_in = T.dim_out = n;
  T.in_space = in;
  T.out_space = out;
  T.norm_bound = 1.0;
  T.fwd = [](const VecR& x) { return x; };
  T.adj = [](const VecR& y) { return y; };
  return T;
}

LinOp diagonal_op(const std::vector<double>& d, Space in, Space out) {
  LinOp T;
  T.dim_in = T.dim_out = static_cast<int>(d.size());
  T.in_space = in;
  T.out_space = out;
  double m = 0.0;
  for (double di : d) m = std::max(m, std::abs(di));
  T.norm_bound = m;
  auto mul = [d](const VecR& x) {
    VecR y = x;
    for (int i = 0; i < y.size(); ++i) y[i] *= d[static_cast<size_t>(i)];
    return y;
  };
  T.fwd = mul;
  T.adj = mul;
  return T;
}

LinOp from_rows(const std::vector<VecR>& rows, Space in, Space out) {
  if (rows.empty()) throw InvalidInputError("from_rows: no rows");
  const int n = rows[0].size();
  for (const VecR& r : rows)
    if (r.size() != n) throw InvalidInputError("from_rows: ragged rows");
  LinOp T;
  T.dim_in = n;
  T.dim_out = static_cast<int>(rows.size());
  T.in_space = in;
  T.out_space = out;
  double fro2 = 0.0;
  for (const VecR& r : rows)
    for (int i = 0; i < n; ++i) fro2 += r[i] * r[i];
  T.norm_bound = std::sqrt(fro2);
  T.fwd = [rows, out](const VecR& x) {
    VecR y(static_cast<int>(rows.size()), out);
    for (size_t i = 0; i < rows.size(); ++i) {
      double s = 0.0;
      for (int j = 0; j < x.size(); ++j) s += rows[i][j] * x[j];
      y[static_cast<int>(i)] = s;
    }
    return y;
  };
  T.adj = [rows, n, in](const VecR& v) {
    VecR x(n, in);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < n; ++j) x[j] += v[static_cast<int>(i)] * rows[i][j];
    return x;
  };
  return T;
}

LinOp scaled_op(const LinOp& T, double c) {
  LinOp S = T;
  S.norm_bound = std::abs(c) * T.norm_bound;
  auto f = T.fwd;
  auto a = T.adj;
  S.fwd = [f, c](const VecR& x) { return c * f(x); };
  S.adj = [a, c](const VecR& y) { return c * a(y); };
  return S;
}

}  // namespace proxdual
