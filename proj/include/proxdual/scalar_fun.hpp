// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>

namespace proxdual {

/// One-dimensional convex penalty with a closed-form proximity operator.
///
/// Kinds:
///   power(p, alpha)        alpha*|x|^p, p in {1, 4/3, 3/2, 2, 3, 4}
///   neg_log(alpha)         -alpha*ln(x) on x > 0
///   log_barrier(omega)     ln(omega) - ln(omega - |x|) on |x| < omega
///   huber(omega, tau)      tau*x^2 near 0, linear with slope omega*sqrt(2*tau) beyond
///   plus_support_interval  base + support of [lo, hi]  (base smooth at 0)
///   plus_indicator_interval base restricted to [lo, hi]
///
/// A positive scale gamma folds into the parameters analytically per kind
/// (power/neg_log scale alpha, huber maps to huber(sqrt(g)*omega, g*tau),
/// log_barrier carries an explicit scale field with the closed form extended
/// accordingly, composites fold into their parts). scaled(gamma) returns the
/// folded function, so prox_{gamma*phi} = unit-parameter prox of the fold.
class ScalarFun {
 public:
  enum class Kind {
    Power,
    NegLog,
    LogBarrier,
    Huber,
    PlusSupportInterval,
    PlusIndicatorInterval
  };
  // Canonical exponents for Power; dispatch never compares doubles.
  enum class PowerExp { P1, P43, P32, P2, P3, P4 };

  static ScalarFun power(double p, double alpha);
  static ScalarFun neg_log(double alpha);
  static ScalarFun log_barrier(double omega);
  static ScalarFun huber(double omega, double tau);
  static ScalarFun plus_support_interval(ScalarFun base, double lo, double hi);
  static ScalarFun plus_indicator_interval(ScalarFun base, double lo, double hi);

  Kind kind() const { return kind_; }

  /// phi(xi); +infinity outside the domain.
  double value(double xi) const;

  /// phi*(nu) when a closed form is known.
  std::optional<double> conj_value(double nu) const;

  /// max of the subdifferential at 0; empty when 0 is outside the domain
  /// or the subdifferential is unbounded above.
  std::optional<double> max_subgradient_at_zero() const;

  /// max Argmin phi when the argmin set is a known bounded set.
  std::optional<double> max_argmin() const;

  bool is_even() const;

  /// phi >= phi(0) = 0.
  bool nonneg_with_zero_at_zero() const;

  /// The fold of gamma*phi back into the catalog.
  ScalarFun scaled(double gamma) const;

  /// prox of this function at unit parameter.
  double prox_unit(double xi) const;

 private:
  ScalarFun() = default;
  Kind kind_ = Kind::Power;
  PowerExp pexp_ = PowerExp::P1;
  double p_ = 1.0;       // power exponent as a double
  double alpha_ = 1.0;   // power / neg_log weight
  double omega_ = 1.0;   // log_barrier half-width, huber knee scale
  double tau_ = 1.0;     // huber curvature
  double scale_ = 1.0;   // log_barrier multiplier
  double lo_ = 0.0, hi_ = 0.0;
  std::shared_ptr<const ScalarFun> base_;
};

/// argmin_y phi(y) + (1/(2*gamma)) (xi - y)^2.
double scalar_prox(const ScalarFun& phi, double gamma, double xi);

/// prox of the conjugate at unit parameter: xi - prox_unit(xi).
double scalar_prox_conj_unit(const ScalarFun& phi, double xi);

}  // namespace proxdual
