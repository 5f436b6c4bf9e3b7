// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include "proxdual/opnorm.hpp"

#include <cmath>
#include <random>

namespace proxdual {

namespace {
VecR random_unit(int n, Space s, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  VecR v(n, s);
  for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  double nv = norm(v);
  if (nv > 0.0) v *= 1.0 / nv;
  return v;
}
}  // namespace

double power_iteration_norm(const LinOp& T, int iterations, unsigned long long seed) {
  if (iterations < 1) throw InvalidInputError("power_iteration_norm: iterations must be >= 1");
  std::mt19937_64 rng(seed);
  VecR x = random_unit(T.dim_in, T.in_space, rng);
  double sigma2 = 0.0;
  for (int it = 0; it < iterations; ++it) {
    VecR tx = T.apply(x);
    sigma2 = dot(tx, tx);  // Rayleigh quotient of T*T at unit x
    if (sigma2 == 0.0) return 0.0;
    VecR y = T.apply_adjoint(tx);
    double ny = norm(y);
    if (ny == 0.0) return std::sqrt(sigma2);
    x = (1.0 / ny) * y;
  }
  return std::sqrt(sigma2);
}

double estimate_opnorm(const LinOp& T, int iterations, unsigned long long seed) {
  return 1.05 * power_iteration_norm(T, iterations, seed);
}

double adjoint_consistency_check(const LinOp& T, int trials, unsigned long long seed) {
  if (trials < 1) throw InvalidInputError("adjoint_consistency_check: trials must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    VecR x(T.dim_in, T.in_space), y(T.dim_out, T.out_space);
    for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
    for (int i = 0; i < y.size(); ++i) y[i] = gauss(rng);
    double lhs = dot(T.apply(x), y);
    double rhs = dot(x, T.apply_adjoint(y));
    double defect = std::abs(lhs - rhs) / (1.0 + norm(x) * norm(y));
    worst = std::max(worst, defect);
  }
  return worst;
}

}  // namespace proxdual
