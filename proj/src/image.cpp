// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/image.hpp"

#include <cmath>

namespace proxdual {

GradField discrete_gradient(const ImageGrid& x) {
  const int n = x.n;
  GradField y(n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      y.v1(k, l) = (k < n - 1) ? x.at(k + 1, l) - x.at(k, l) : 0.0;
      y.v2(k, l) = (l < n - 1) ? x.at(k, l + 1) - x.at(k, l) : 0.0;
    }
  }
  return y;
}

ImageGrid discrete_divergence(const GradField& y) {
  const int n = y.n;
  ImageGrid x(n);
  if (n == 1) return x;
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      double d1;
      if (k == 0)
        d1 = y.v1(0, l);
      else if (k < n - 1)
        d1 = y.v1(k, l) - y.v1(k - 1, l);
      else
        d1 = -y.v1(n - 2, l);
      double d2;
      if (l == 0)
        d2 = y.v2(k, 0);
      else if (l < n - 1)
        d2 = y.v2(k, l) - y.v2(k, l - 1);
      else
        d2 = -y.v2(k, n - 2);
      x.at(k, l) = d1 + d2;
    }
  }
  return x;
}

double dot(const ImageGrid& a, const ImageGrid& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.px.size(); ++i) s += a.px[i] * b.px[i];
  return s;
}

double dot(const GradField& a, const GradField& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.c1.size(); ++i) s += a.c1[i] * b.c1[i] + a.c2[i] * b.c2[i];
  return s;
}

double norm(const ImageGrid& a) { return std::sqrt(dot(a, a)); }

VecR to_vec(const ImageGrid& img, Space s) { return VecR::from(img.px, s); }

ImageGrid image_from_vec(const VecR& v, int n) {
  if (v.size() != n * n) throw InvalidInputError("image_from_vec: size mismatch");
  ImageGrid img(n);
  img.px = v.data();
  return img;
}

VecR to_vec(const GradField& f, Space s) {
  std::vector<double> xs;
  xs.reserve(f.c1.size() * 2);
  xs.insert(xs.end(), f.c1.begin(), f.c1.end());
  xs.insert(xs.end(), f.c2.begin(), f.c2.end());
  return VecR::from(std::move(xs), s);
}

GradField field_from_vec(const VecR& v, int n) {
  const size_t m = static_cast<size_t>(n) * n;
  if (v.size() != static_cast<int>(2 * m))
    throw InvalidInputError("field_from_vec: size mismatch");
  GradField f(n);
  for (size_t i = 0; i < m; ++i) {
    f.c1[i] = v[static_cast<int>(i)];
    f.c2[i] = v[static_cast<int>(m + i)];
  }
  return f;
}

LinOp grad_linop(int n, double mu) {
  if (n < 1) throw InvalidInputError("grad_linop: side must be positive");
  LinOp T;
  T.dim_in = n * n;
  T.dim_out = 2 * n * n;
  T.norm_bound = 2.0 * std::sqrt(2.0) * mu;
  T.fwd = [n, mu](const VecR& x) {
    GradField g = discrete_gradient(image_from_vec(x, n));
    VecR y = to_vec(g, Space::G);
    return mu * y;
  };
  T.adj = [n, mu](const VecR& v) {
    ImageGrid d = discrete_divergence(field_from_vec(v, n));
    VecR x = to_vec(d, Space::H);
    return (-mu) * x;
  };
  return T;
}

}  // namespace proxdual
