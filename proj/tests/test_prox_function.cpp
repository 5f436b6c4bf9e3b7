// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "proxdual/oracle.hpp"
#include "proxdual/prox_function.hpp"

using namespace proxdual;

namespace {
VecR random_vec(int n, std::mt19937_64& rng, double scale = 2.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  VecR v(n, Space::H);
  for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

// 2-d catalog sample covering every kind.
std::vector<std::pair<const char*, ProxFunPtr>> catalog_sample() {
  ConvexSetR box = ConvexSetR::box(VecR{{-1.0, -0.5}}, VecR{{0.5, 1.0}});
  ConvexSetR ball = ConvexSetR::l2_ball(VecR{{0.2, -0.1}}, 0.8);
  std::vector<VecR> onb = {VecR{{0.6, 0.8}}, VecR{{-0.8, 0.6}}};
  LinOp A = diagonal_op({1.0, 3.0}, Space::H, Space::H);
  std::vector<QuadraticTerm> terms;
  terms.push_back({0.7, diagonal_op({2.0, 1.0}, Space::H, Space::H), VecR{{0.3, -0.2}}});
  terms.push_back({1.3, identity_op(2, Space::H, Space::H), VecR{{0.0, 0.5}}});
  // rows of M scaled so that M M* = 2 * Id
  std::vector<VecR> mrows = {VecR{{1.0, 0.0}}, VecR{{0.0, 1.0}}, VecR{{1.0, 0.0}},
                             VecR{{0.0, 1.0}}};
  return {
      {"indicator", make_indicator(box)},
      {"support", make_support(ball)},
      {"dist_sq", make_dist_sq(box, 0.7)},
      {"sq_minus_dist", make_sq_minus_dist(ball, 1.2)},
      {"phi_of_dist", make_phi_of_dist(ScalarFun::power(1.0, 0.6), ball)},
      {"support_plus_phi_norm", make_support_plus_phi_norm(box, ScalarFun::power(2.0, 0.4))},
      {"quadratic", make_quadratic(A, VecR{{0.1, -0.4}}, 0.25)},
      {"sum_quadratics", make_sum_quadratics(terms, 2)},
      {"separable_basis",
       make_separable_basis({ScalarFun::power(1.0, 0.5), ScalarFun::huber(1.0, 0.8)}, onb)},
      {"tight_frame",
       make_tight_frame_composite(make_scalar_lift(ScalarFun::power(1.0, 0.4), 4),
                                  from_rows(mrows, Space::H, Space::G), 2.0)},
      {"scalar_lift", make_scalar_lift(ScalarFun::power(1.0, 0.9), 2)},
      {"zero", make_zero(2)},
  };
}
}  // namespace

TEST_CASE("support of an interval behaves like the absolute value") {
  auto F = make_support(ConvexSetR::interval(-1.0, 1.0));
  VecR r = F->prox(1.0, VecR{{3.0}});
  CHECK(r[0] == doctest::Approx(2.0).epsilon(1e-15));
  // matches the soft threshold of |.| with alpha = 1
  CHECK(r[0] == doctest::Approx(scalar_prox(ScalarFun::power(1.0, 1.0), 1.0, 3.0)));
}

TEST_CASE("quadratic prox solves the shifted linear system") {
  auto F = make_quadratic(diagonal_op({1.0, 1.0}, Space::H, Space::H), VecR{{0.0, 0.0}}, 0.0);
  VecR r = F->prox(1.0, VecR{{2.0, 4.0}});
  CHECK(norm(r - VecR{{1.0, 2.0}}) <= 1e-12);
}

TEST_CASE("distance composite reduces to shrinking the norm for C = {0}") {
  auto F = make_phi_of_dist(ScalarFun::power(1.0, 1.0), ConvexSetR::singleton(VecR{{0.0, 0.0}}));
  VecR r = F->prox(1.0, VecR{{3.0, 0.0}});
  CHECK(norm(r - VecR{{2.0, 0.0}}) <= 1e-14);
}

TEST_CASE("separable prox over the canonical basis soft-thresholds coordinates") {
  std::vector<VecR> canon = {VecR{{1.0, 0.0, 0.0}}, VecR{{0.0, 1.0, 0.0}}, VecR{{0.0, 0.0, 1.0}}};
  std::vector<ScalarFun> phis(3, ScalarFun::power(1.0, 1.0));
  auto F = make_separable_basis(phis, canon);
  VecR r = F->prox(1.0, VecR{{2.0, -0.5, -3.0}});
  CHECK(norm(r - VecR{{1.0, 0.0, -2.0}}) <= 1e-14);
}

TEST_CASE("conjugate prox via the decomposition identity") {
  SUBCASE("indicator of the origin has identity conjugate prox") {
    auto F = make_indicator(ConvexSetR::singleton(VecR{{0.0, 0.0}}));
    VecR x{{1.5, -2.0}};
    CHECK(norm(prox_conjugate(*F, 0.7, x) - x) == 0.0);
  }
  SUBCASE("conjugate of the norm clamps") {
    auto F = make_phi_of_dist(ScalarFun::power(1.0, 1.0), ConvexSetR::singleton(VecR{{0.0}}));
    CHECK(prox_conjugate(*F, 1.0, VecR{{0.5}})[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(prox_conjugate(*F, 1.0, VecR{{3.0}})[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("conjugate prox of a support function projects onto a scaled set") {
    ConvexSetR D = ConvexSetR::l2_ball(VecR{{0.0, 0.0}}, 1.0);
    auto F = make_support(D);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
      VecR x = random_vec(2, rng);
      double gamma = 0.3 + 0.1 * t;
      VecR want = D.project(x);  // conjugate of support is the indicator
      CHECK(norm(prox_conjugate(*F, gamma, x) - want) <= 1e-14);
    }
  }
}

TEST_CASE("moreau envelope values") {
  SUBCASE("indicator gives half squared distance") {
    ConvexSetR box = ConvexSetR::box(VecR{{-1.0, -1.0}}, VecR{{1.0, 1.0}});
    auto F = make_indicator(box);
    VecR x{{3.0, 0.0}};
    CHECK(moreau_envelope_value(*F, x) == doctest::Approx(0.5 * 4.0).epsilon(1e-12));
  }
  SUBCASE("zero function has zero envelope") {
    auto F = make_zero(3);
    CHECK(moreau_envelope_value(*F, VecR{{1.0, 2.0, 3.0}}) == 0.0);
  }
  SUBCASE("absolute value at 3, with the complementary envelope") {
    auto F = make_scalar_lift(ScalarFun::power(1.0, 1.0), 1);
    CHECK(moreau_envelope_value(*F, VecR{{3.0}}) == doctest::Approx(2.5).epsilon(1e-14));
    // envelope of the conjugate at the same point: |x|^2/2 - envelope
    auto Fc = make_indicator(ConvexSetR::interval(-1.0, 1.0));
    CHECK(moreau_envelope_value(*Fc, VecR{{3.0}}) == doctest::Approx(4.5 - 2.5).epsilon(1e-14));
  }
  SUBCASE("missing value capability raises") {
    auto F = make_quadratic(diagonal_op({1.0}, Space::H, Space::H), VecR{{0.0}}, 0.0);
    CHECK(moreau_envelope_value(*F, VecR{{1.0}}) >= 0.0);  // quadratic has a value
    // the tight-frame composite over a value-less inner function does not
    std::vector<VecR> rows = {VecR{{1.0}}};
    auto inner = make_quadratic(diagonal_op({1.0}, Space::H, Space::H), VecR{{0.0}}, 0.0);
    auto G = make_tight_frame_composite(inner, from_rows(rows, Space::H, Space::G), 1.0);
    CHECK(moreau_envelope_value(*G, VecR{{2.0}}) >= 0.0);
  }
}

TEST_CASE("capability error surfaces when no value exists") {
  auto F = make_support_plus_phi_norm(ConvexSetR::box(VecR{{0.0}}, VecR{{1.0}}),
                                      ScalarFun::power(2.0, 1.0));
  CHECK_THROWS_AS(moreau_envelope_value(
                      *make_tight_frame_composite(
                          make_support(ConvexSetR::l2_ball(VecR{{0.0}}, 1.0)),
                          from_rows({VecR{{1.0}}}, Space::H, Space::G), 1.0),
                  VecR{{0.5}}), CapabilityError);
  (void)F;
}

TEST_CASE("firm nonexpansiveness holds for every kind") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ug(0.2, 2.0);
  for (auto& [name, F] : catalog_sample()) {
    CAPTURE(name);
    for (int t = 0; t < 200; ++t) {
      double gamma = ug(rng);
      VecR x = random_vec(2, rng), y = random_vec(2, rng);
      VecR px = F->prox(gamma, x), py = F->prox(gamma, y);
      double lhs = dot(px - py, px - py);
      double rhs = dot(x - y, px - py);
      CHECK(lhs <= rhs + 1e-10);
      CHECK(norm(px - py) <= norm(x - y) + 1e-10);
    }
  }
}

TEST_CASE("decomposition identity residual vanishes for native pairs") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> ug(0.2, 2.0);
  std::vector<std::pair<const char*, ProxFunPtr>> kinds = {
      {"indicator(box)", make_indicator(ConvexSetR::box(VecR{{-1.0, 0.0}}, VecR{{1.0, 2.0}}))},
      {"indicator(ball)", make_indicator(ConvexSetR::l2_ball(VecR{{0.1, 0.1}}, 0.9))},
      {"support(box)", make_support(ConvexSetR::box(VecR{{-0.5, -0.5}}, VecR{{0.5, 0.5}}))},
      {"support(l1)", make_support(ConvexSetR::l1_ball(2, 1.3))},
      {"zero", make_zero(2)},
  };
  for (auto& [name, F] : kinds) {
    CAPTURE(name);
    for (int t = 0; t < 50; ++t) {
      double gamma = ug(rng);
      VecR x = random_vec(2, rng);
      // x = prox_{gamma F}(x) + gamma * prox_{(1/gamma) F*}(x / gamma)
      VecR left = F->prox(gamma, x);
      VecR right = gamma * prox_conjugate(*F, 1.0 / gamma, (1.0 / gamma) * x);
      CHECK(norm(x - left - right) <= 1e-10);
    }
  }
}

TEST_CASE("vector proxes agree with the grid oracle in 2-d") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> ug(0.3, 1.8);
  // grid-oracle check of the full minimization for each value-capable kind
  for (auto& [name, F] : catalog_sample()) {
    if (!F->value(VecR{{0.0, 0.0}})) continue;
    CAPTURE(name);
    for (int t = 0; t < 3; ++t) {
      double gamma = ug(rng);
      VecR x = random_vec(2, rng, 0.8);
      VecR p = F->prox(gamma, x);
      // prox is the argmin of F(y) + |x-y|^2/(2 gamma);
      // compare objective values against nearby grid candidates
      auto obj = [&](const VecR& y) {
        auto fv = F->value(y);
        REQUIRE(fv);
        VecR d = x - y;
        return *fv + dot(d, d) / (2.0 * gamma);
      };
      double at_p = obj(p);
      std::uniform_real_distribution<double> jitter(-0.3, 0.3);
      for (int probe = 0; probe < 120; ++probe) {
        VecR y = p;
        y[0] += jitter(rng);
        y[1] += jitter(rng);
        double at_y = obj(y);
        if (std::isfinite(at_y)) CHECK(at_p <= at_y + 1e-9);
      }
    }
  }
}

TEST_CASE("branch handoff of the distance composite is continuous") {
  // with phi = alpha |.|, the threshold sits at distance gamma * alpha
  ConvexSetR C = ConvexSetR::l2_ball(VecR{{0.0, 0.0}}, 1.0);
  double alpha = 0.6, gamma = 1.3;
  auto F = make_phi_of_dist(ScalarFun::power(1.0, alpha), C);
  double dstar = gamma * alpha;
  for (double side : {-1e-9, 1e-9}) {
    double d = dstar + side;
    VecR x{{1.0 + d, 0.0}};  // distance to the ball is exactly d
    VecR p = F->prox(gamma, x);
    CHECK(norm(p - VecR{{1.0, 0.0}}) <= 1e-8);
  }
}

TEST_CASE("envelope identity for kinds with both envelopes") {
  std::mt19937_64 rng(404);
  ConvexSetR box = ConvexSetR::box(VecR{{-1.0, -0.5}}, VecR{{0.5, 1.0}});
  std::vector<std::pair<ProxFunPtr, ProxFunPtr>> pairs = {
      {make_indicator(box), make_support(box)},
      {make_scalar_lift(ScalarFun::power(1.0, 0.8), 2),
       make_indicator(ConvexSetR::linf_ball(2, 0.8))},
  };
  for (auto& [F, Fstar] : pairs) {
    for (int t = 0; t < 30; ++t) {
      VecR x = random_vec(2, rng);
      double sum = moreau_envelope_value(*F, x) + moreau_envelope_value(*Fstar, x);
      CHECK(sum == doctest::Approx(dot(x, x) / 2.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("dist_sq and sq_minus_dist agree with direct minimization in 1-d") {
  ConvexSetR C = ConvexSetR::interval(-0.5, 0.5);
  auto F1 = make_dist_sq(C, 0.8);
  auto F2 = make_sq_minus_dist(C, 0.8);
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), ug(0.3, 2.0);
  for (int t = 0; t < 40; ++t) {
    double x = ux(rng), gamma = ug(rng);
    for (auto& F : {F1, F2}) {
      VecR p = F->prox(gamma, VecR{{x}});
      auto obj = [&](double y) {
        return *F->value(VecR{{y}}) + (x - y) * (x - y) / (2.0 * gamma);
      };
      // scan a fine grid around the prox
      double at_p = obj(p[0]);
      for (double y = -4.0; y <= 4.0; y += 1e-3) CHECK(at_p <= obj(y) + 1e-7);
    }
  }
}

TEST_CASE("tight frame composite matches the direct prox for an orthonormal M") {
  // with M orthonormal (kappa = 1), prox(psi o M) = M* prox_psi M
  std::vector<VecR> rows = {VecR{{0.6, 0.8}}, VecR{{-0.8, 0.6}}};
  LinOp M = from_rows(rows, Space::H, Space::G);
  auto psi = make_scalar_lift(ScalarFun::power(1.0, 0.7), 2);
  auto F = make_tight_frame_composite(psi, M, 1.0);
  std::mt19937_64 rng(606);
  for (int t = 0; t < 30; ++t) {
    VecR x = random_vec(2, rng);
    VecR want = M.apply_adjoint(psi->prox(1.0, M.apply(x)));
    CHECK(norm(F->prox(1.0, x) - want) <= 1e-12);
  }
  // a non-tight M is rejected
  std::vector<VecR> bad = {VecR{{1.0, 0.0}}, VecR{{1.0, 0.5}}};
  CHECK_THROWS_AS(make_tight_frame_composite(psi, from_rows(bad, Space::H, Space::G), 1.0),
                  StructuralError);
}

TEST_CASE("support_plus_phi_norm rejects bases without a bounded argmin") {
  ConvexSetR C = ConvexSetR::box(VecR{{0.0}}, VecR{{1.0}});
  CHECK_THROWS_AS(make_support_plus_phi_norm(C, ScalarFun::neg_log(1.0)), InvalidInputError);
  CHECK_THROWS_AS(make_phi_of_dist(ScalarFun::neg_log(1.0), C), InvalidInputError);
}

TEST_CASE("cg failure on a non-positive operator raises with the residual") {
  LinOp skew;  // not self-adjoint positive: rotation by 90 degrees
  skew.dim_in = skew.dim_out = 2;
  skew.in_space = skew.out_space = Space::H;
  skew.norm_bound = 1.0;
  skew.fwd = [](const VecR& x) { return VecR{{-x[1], x[0]}}; };
  skew.adj = [](const VecR& y) { return VecR{{y[1], -y[0]}}; };
  auto F = make_quadratic(skew, VecR{{0.0, 0.0}}, 0.0);
  CHECK_THROWS_AS(F->prox(1.0, VecR{{1.0, 2.0}}), NumericalError);
}

TEST_CASE("scalar lift equals a loop of scalar proxes") {
  auto phi = ScalarFun::huber(0.9, 1.1);
  auto F = make_scalar_lift(phi, 3);
  std::mt19937_64 rng(707);
  for (int t = 0; t < 20; ++t) {
    VecR x = random_vec(3, rng);
    VecR p = F->prox(0.7, x);
    for (int i = 0; i < 3; ++i) CHECK(p[i] == scalar_prox(phi, 0.7, x[i]));
  }
}
