// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "proxdual/linop.hpp"
#include "proxdual/vec.hpp"

namespace proxdual {

/// Square N x N image, row-major. Indices are (row k, column l), 0-based.
struct ImageGrid {
  int n = 0;
  std::vector<double> px;

  ImageGrid() = default;
  explicit ImageGrid(int side, double fill = 0.0)
      : n(side), px(static_cast<size_t>(side) * side, fill) {}

  double at(int k, int l) const { return px[static_cast<size_t>(k) * n + l]; }
  double& at(int k, int l) { return px[static_cast<size_t>(k) * n + l]; }
};

/// Two-component field over an N x N grid. When produced by
/// discrete_gradient, the last row of comp1 and last column of comp2 are zero.
struct GradField {
  int n = 0;
  std::vector<double> c1, c2;

  GradField() = default;
  explicit GradField(int side)
      : n(side),
        c1(static_cast<size_t>(side) * side, 0.0),
        c2(static_cast<size_t>(side) * side, 0.0) {}

  double v1(int k, int l) const { return c1[static_cast<size_t>(k) * n + l]; }
  double& v1(int k, int l) { return c1[static_cast<size_t>(k) * n + l]; }
  double v2(int k, int l) const { return c2[static_cast<size_t>(k) * n + l]; }
  double& v2(int k, int l) { return c2[static_cast<size_t>(k) * n + l]; }
};

/// Forward differences with zero last row/column.
GradField discrete_gradient(const ImageGrid& x);

/// Discrete divergence; the exact negative adjoint of discrete_gradient,
/// so <grad x, y> = -<x, div y> holds to rounding.
ImageGrid discrete_divergence(const GradField& y);

double dot(const ImageGrid& a, const ImageGrid& b);
double dot(const GradField& a, const GradField& b);
double norm(const ImageGrid& a);

VecR to_vec(const ImageGrid& img, Space s = Space::H);
ImageGrid image_from_vec(const VecR& v, int n);

/// Layout: [comp1 row-major; comp2 row-major].
VecR to_vec(const GradField& f, Space s = Space::G);
GradField field_from_vec(const VecR& v, int n);

/// mu * gradient as an operator on flattened images; norm_bound = 2*sqrt(2)*mu.
LinOp grad_linop(int n, double mu);

}  // namespace proxdual
