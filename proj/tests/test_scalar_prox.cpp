// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "proxdual/oracle.hpp"
#include "proxdual/scalar_fun.hpp"

using namespace proxdual;
using oracle::GridSpec;
using oracle::grid_argmin_scalar;

namespace {
// Every catalog kind with a grid range on which its prox is interior.
struct KindFixture {
  const char* name;
  ScalarFun phi;
  GridSpec gs;
};

std::vector<KindFixture> all_kinds() {
  auto box = [](double lo, double hi, bool boundary_ok = false) {
    GridSpec gs;
    gs.lo = {lo};
    gs.hi = {hi};
    gs.step = 1e-3;
    gs.allow_boundary_argmin = boundary_ok;
    return gs;
  };
  return {
      {"power(1)", ScalarFun::power(1.0, 0.7), box(-8, 8)},
      {"power(4/3)", ScalarFun::power(4.0 / 3.0, 0.9), box(-8, 8)},
      {"power(3/2)", ScalarFun::power(1.5, 1.1), box(-8, 8)},
      {"power(2)", ScalarFun::power(2.0, 0.6), box(-8, 8)},
      {"power(3)", ScalarFun::power(3.0, 0.4), box(-8, 8)},
      {"power(4)", ScalarFun::power(4.0, 0.8), box(-8, 8)},
      {"neg_log", ScalarFun::neg_log(0.9), box(1e-4, 12)},
      {"log_barrier", ScalarFun::log_barrier(2.5), box(-2.5 + 1e-9, 2.5 - 1e-9, true)},
      {"huber", ScalarFun::huber(1.2, 0.8), box(-8, 8)},
      {"plus_support_interval",
       ScalarFun::plus_support_interval(ScalarFun::power(2.0, 0.5), -0.4, 0.9), box(-8, 8)},
      {"plus_indicator_interval",
       ScalarFun::plus_indicator_interval(ScalarFun::huber(1.0, 0.7), -1.0, 1.5), box(-8, 8)},
  };
}
}  // namespace

TEST_CASE("soft threshold") {
  CHECK(scalar_prox(ScalarFun::power(1.0, 1.0), 1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(scalar_prox(ScalarFun::power(1.0, 1.0), 1.0, -0.5) == 0.0);
}

TEST_CASE("quadratic shrinkage") {
  CHECK(scalar_prox(ScalarFun::power(2.0, 0.5), 1.0, 3.0) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("neg_log prox at zero") {
  CHECK(scalar_prox(ScalarFun::neg_log(1.0), 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("p = 4/3 agrees with the grid oracle") {
  GridSpec gs;
  gs.lo = {-3.0};
  gs.hi = {3.0};
  gs.step = 1e-4;
  double want = grid_argmin_scalar(ScalarFun::power(4.0 / 3.0, 1.0), 1.0, 1.0, gs);
  CHECK(scalar_prox(ScalarFun::power(4.0 / 3.0, 1.0), 1.0, 1.0) ==
        doctest::Approx(want).epsilon(1e-6));
}

TEST_CASE("huber prox in the linear regime") {
  CHECK(scalar_prox(ScalarFun::huber(1.0, 1.0), 1.0, 5.0) ==
        doctest::Approx(5.0 - std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("log_barrier closed form matches the unscaled formula") {
  double omega = 2.0, xi = 3.0;
  double want = (xi + omega - std::sqrt((xi - omega) * (xi - omega) + 4.0)) / 2.0;
  CHECK(scalar_prox(ScalarFun::log_barrier(omega), 1.0, xi) ==
        doctest::Approx(want).epsilon(1e-15));
  CHECK(scalar_prox(ScalarFun::log_barrier(omega), 1.0, 0.3) == 0.0);  // below 1/omega
}

TEST_CASE("interval-support composite routes through the soft step") {
  // base power(2, 0.5), interval [-1, 2]: prox = base prox of soft(xi)
  ScalarFun phi = ScalarFun::plus_support_interval(ScalarFun::power(2.0, 0.5), -1.0, 2.0);
  CHECK(scalar_prox(phi, 1.0, 1.5) == 0.0);                    // inside the interval
  CHECK(scalar_prox(phi, 1.0, 4.0) == doctest::Approx(1.0));   // (4-2)/(1+1)
  CHECK(scalar_prox(phi, 1.0, -3.0) == doctest::Approx(-1.0));  // (-3+1)/(1+1)
}

TEST_CASE("interval-indicator composite clamps the base prox") {
  ScalarFun phi = ScalarFun::plus_indicator_interval(ScalarFun::power(2.0, 0.5), -1.0, 1.0);
  CHECK(scalar_prox(phi, 1.0, 4.0) == doctest::Approx(1.0));  // base gives 2, clamped
  CHECK(scalar_prox(phi, 1.0, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("every kind agrees with the grid oracle on seeded samples") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> ug(0.1, 3.0), ux(-4.0, 4.0);
  for (auto& kf : all_kinds()) {
    CAPTURE(kf.name);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      double gamma = ug(rng), xi = ux(rng);
      worst = std::max(worst,
                       std::abs(grid_argmin_scalar(kf.phi, gamma, xi, kf.gs) -
                                scalar_prox(kf.phi, gamma, xi)));
    }
    CHECK(worst <= 1e-5);
  }
}

TEST_CASE("scaling folds exactly: prox of (gamma phi) at unit parameter") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ug(0.2, 2.5), ux(-3.0, 3.0);
  for (auto& kf : all_kinds()) {
    CAPTURE(kf.name);
    for (int t = 0; t < 25; ++t) {
      double gamma = ug(rng), xi = ux(rng);
      double a = scalar_prox(kf.phi, gamma, xi);
      double b = kf.phi.scaled(gamma).prox_unit(xi);
      CHECK(a == b);
    }
  }
}

TEST_CASE("firm nonexpansiveness of the scalar proxes") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> ux(-5.0, 5.0), ug(0.1, 2.0);
  for (auto& kf : all_kinds()) {
    CAPTURE(kf.name);
    for (int t = 0; t < 200; ++t) {
      double gamma = ug(rng);
      double x = ux(rng), y = ux(rng);
      double px = scalar_prox(kf.phi, gamma, x), py = scalar_prox(kf.phi, gamma, y);
      CHECK((px - py) * (px - py) <= (x - y) * (px - py) + 1e-10);
    }
  }
}

TEST_CASE("max subgradient at zero") {
  CHECK(*ScalarFun::power(1.0, 0.7).max_subgradient_at_zero() == doctest::Approx(0.7));
  CHECK(*ScalarFun::power(2.0, 0.7).max_subgradient_at_zero() == 0.0);
  CHECK(*ScalarFun::huber(1.0, 1.0).max_subgradient_at_zero() == 0.0);
  CHECK(*ScalarFun::log_barrier(2.0).max_subgradient_at_zero() == doctest::Approx(0.5));
  CHECK(!ScalarFun::neg_log(1.0).max_subgradient_at_zero());
  CHECK(*ScalarFun::plus_support_interval(ScalarFun::power(2.0, 1.0), -0.3, 0.8)
             .max_subgradient_at_zero() == doctest::Approx(0.8));
}

TEST_CASE("evenness and positivity flags") {
  CHECK(ScalarFun::power(1.5, 1.0).is_even());
  CHECK(!ScalarFun::neg_log(1.0).is_even());
  CHECK(ScalarFun::plus_support_interval(ScalarFun::power(2.0, 1.0), -0.5, 0.5).is_even());
  CHECK(!ScalarFun::plus_support_interval(ScalarFun::power(2.0, 1.0), -0.5, 0.9).is_even());
  CHECK(ScalarFun::huber(1.0, 1.0).nonneg_with_zero_at_zero());
  CHECK(!ScalarFun::neg_log(1.0).nonneg_with_zero_at_zero());
}

TEST_CASE("composite constructors reject unusable bases") {
  CHECK_THROWS_AS(ScalarFun::plus_support_interval(ScalarFun::power(1.0, 1.0), -1.0, 1.0),
                  InvalidInputError);
  CHECK_THROWS_AS(ScalarFun::plus_support_interval(ScalarFun::neg_log(1.0), -1.0, 1.0),
                  InvalidInputError);
  CHECK_THROWS_AS(ScalarFun::plus_indicator_interval(ScalarFun::neg_log(1.0), -2.0, -1.0),
                  InvalidInputError);
  CHECK_THROWS_AS(ScalarFun::power(2.5, 1.0), InvalidInputError);
  CHECK_THROWS_AS(scalar_prox(ScalarFun::power(1.0, 1.0), -1.0, 0.0), InvalidInputError);
  CHECK_THROWS_AS(scalar_prox(ScalarFun::power(1.0, 1.0), 1.0, NAN), InvalidInputError);
}

TEST_CASE("conjugate values satisfy Fenchel-Young with equality at the prox") {
  // At p = prox_phi(x): phi(p) + phi*(x - p) = <p, x - p>.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  std::vector<ScalarFun> kinds = {ScalarFun::power(1.0, 0.8), ScalarFun::power(4.0 / 3.0, 1.2),
                                  ScalarFun::power(2.0, 0.5), ScalarFun::power(3.0, 0.7),
                                  ScalarFun::power(4.0, 0.9), ScalarFun::huber(1.1, 0.6),
                                  ScalarFun::log_barrier(2.0), ScalarFun::neg_log(0.8)};
  for (auto& phi : kinds) {
    for (int t = 0; t < 50; ++t) {
      double x = ux(rng);
      double p = scalar_prox(phi, 1.0, x);
      double u = x - p;  // in the subdifferential at p
      auto cv = phi.conj_value(u);
      REQUIRE(cv);
      CHECK(phi.value(p) + *cv == doctest::Approx(p * u).epsilon(1e-9).scale(1.0));
    }
  }
}
