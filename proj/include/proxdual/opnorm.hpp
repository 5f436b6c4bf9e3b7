// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "proxdual/linop.hpp"

namespace proxdual {

/// Rayleigh-quotient power iteration on T*T from a seeded start vector.
/// Deterministic given the seed; never exceeds the true operator norm.
double power_iteration_norm(const LinOp& T, int iterations, unsigned long long seed);

/// power_iteration_norm times a 1.05 safety factor, suitable as a norm_bound
/// when no analytic bound is known. Returns 0 for the zero operator (which
/// the solver rejects).
double estimate_opnorm(const LinOp& T, int iterations, unsigned long long seed);

/// Max over random pairs of |<Tx,y> - <x,T*y>| / (1 + |x||y|).
double adjoint_consistency_check(const LinOp& T, int trials, unsigned long long seed);

}  // namespace proxdual
