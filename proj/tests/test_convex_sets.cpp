// Copyright (c) proxdual contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "proxdual/convex_set.hpp"

using namespace proxdual;

namespace {
std::vector<ConvexSetR> catalog_2d() {
  return {
      ConvexSetR::box(VecR{{-1.0, 0.0}}, VecR{{1.0, 2.0}}),
      ConvexSetR::halfspace(VecR{{1.0, 1.0}}, 0.5),
      ConvexSetR::affine({VecR{{1.0, 2.0}}}, VecR{{1.0}}),
      ConvexSetR::l2_ball(VecR{{0.5, -0.5}}, 1.5),
      ConvexSetR::linf_ball(2, 0.8),
      ConvexSetR::l1_ball(2, 1.2),
      ConvexSetR::subspace({VecR{{0.6, 0.8}}}),
      ConvexSetR::whole_space(2),
      ConvexSetR::singleton(VecR{{0.25, -1.0}}),
      ConvexSetR::nonneg_orthant(2),
  };
}

VecR random_vec2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 2.0);
  return VecR{{gauss(rng), gauss(rng)}};
}
}  // namespace

TEST_CASE("projection hand examples") {
  CHECK(norm(ConvexSetR::l2_ball(VecR{{0.0, 0.0}}, 1.0).project(VecR{{3.0, 4.0}}) -
             VecR{{0.6, 0.8}}) <= 1e-15);
  CHECK(ConvexSetR::interval(-1.0, 1.0).project(VecR{{-7.0}})[0] == -1.0);
  CHECK(norm(ConvexSetR::l1_ball(2, 1.0).project(VecR{{0.8, 0.8}}) - VecR{{0.5, 0.5}}) <= 1e-15);
  CHECK(norm(ConvexSetR::nonneg_orthant(2).project(VecR{{-1.0, 2.0}}) - VecR{{0.0, 2.0}}) == 0.0);
  CHECK(norm(ConvexSetR::singleton(VecR{{1.0, 2.0}}).project(VecR{{9.0, 9.0}}) -
             VecR{{1.0, 2.0}}) == 0.0);
  // halfspace x1 + x2 <= 0, project (1,1) -> (0,0)
  CHECK(norm(ConvexSetR::halfspace(VecR{{1.0, 1.0}}, 0.0).project(VecR{{1.0, 1.0}})) <= 1e-15);
  // line x1 + 2 x2 = 1
  VecR p = ConvexSetR::affine({VecR{{1.0, 2.0}}}, VecR{{1.0}}).project(VecR{{1.0, 2.0}});
  CHECK(p[0] + 2.0 * p[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm(p - VecR{{0.2, 0.4}}) <= 1e-12);
}

TEST_CASE("projection is idempotent and lands in the set") {
  std::mt19937_64 rng(11);
  for (auto& C : catalog_2d()) {
    bool clamp_kind = C.kind() == ConvexSetR::Kind::Box ||
                      C.kind() == ConvexSetR::Kind::Interval ||
                      C.kind() == ConvexSetR::Kind::LinfBall ||
                      C.kind() == ConvexSetR::Kind::NonnegOrthant ||
                      C.kind() == ConvexSetR::Kind::Singleton ||
                      C.kind() == ConvexSetR::Kind::WholeSpace;
    for (int t = 0; t < 40; ++t) {
      VecR x = random_vec2(rng);
      VecR p = C.project(x);
      double defect = norm(C.project(p) - p);
      if (clamp_kind)
        CHECK(defect == 0.0);  // pointwise clamps reproject bit-exactly
      else
        CHECK(defect <= 1e-14 * (1.0 + norm(x)));
      CHECK(C.distance(p) <= 1e-12);
    }
  }
}

TEST_CASE("projection minimizes distance against random feasible points") {
  std::mt19937_64 rng(17);
  for (auto& C : catalog_2d()) {
    for (int t = 0; t < 30; ++t) {
      VecR x = random_vec2(rng);
      VecR p = C.project(x);
      VecR q = C.project(random_vec2(rng));  // some point of C
      CHECK(norm(x - p) <= norm(x - q) + 1e-12);
    }
  }
}

TEST_CASE("l1 ball projection satisfies the KKT structure") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 1.5);
  for (int t = 0; t < 50; ++t) {
    VecR x(6, Space::H);
    for (int i = 0; i < 6; ++i) x[i] = gauss(rng);
    VecR p = project_l1_ball(x, 1.0);
    CHECK(norm_1(p) <= 1.0 + 1e-12);
    if (norm_1(x) > 1.0) {
      CHECK(norm_1(p) == doctest::Approx(1.0).epsilon(1e-12));
      // soft-threshold structure: equal shrinkage on the support
      double theta = -1.0;
      for (int i = 0; i < 6; ++i) {
        if (p[i] != 0.0) {
          double t_i = std::abs(x[i]) - std::abs(p[i]);
          if (theta < 0.0)
            theta = t_i;
          else
            CHECK(t_i == doctest::Approx(theta).epsilon(1e-10));
          CHECK(p[i] * x[i] > 0.0);
        }
      }
    } else {
      CHECK(norm(p - x) == 0.0);
    }
  }
}

TEST_CASE("rank-deficient affine rows are rejected at construction") {
  CHECK_THROWS_AS(ConvexSetR::affine({VecR{{1.0, 2.0}}, VecR{{2.0, 4.0}}}, VecR{{1.0, 2.0}}),
                  StructuralError);
  CHECK_THROWS_AS(ConvexSetR::subspace({VecR{{1.0, 1.0}}}), StructuralError);
}

TEST_CASE("support function hand values") {
  CHECK(ConvexSetR::interval(-1.0, 2.0).support(VecR{{3.0}}) == doctest::Approx(6.0));
  CHECK(ConvexSetR::interval(-1.0, 2.0).support(VecR{{-3.0}}) == doctest::Approx(3.0));
  CHECK(ConvexSetR::l2_ball(VecR{{1.0, 0.0}}, 2.0).support(VecR{{0.0, 1.0}}) ==
        doctest::Approx(2.0));
  CHECK(ConvexSetR::linf_ball(2, 0.5).support(VecR{{1.0, -2.0}}) == doctest::Approx(1.5));
  CHECK(ConvexSetR::l1_ball(2, 0.5).support(VecR{{1.0, -2.0}}) == doctest::Approx(1.0));
  CHECK(ConvexSetR::singleton(VecR{{2.0, 1.0}}).support(VecR{{1.0, 1.0}}) == doctest::Approx(3.0));
  CHECK(std::isinf(ConvexSetR::nonneg_orthant(2).support(VecR{{0.1, -1.0}})));
  CHECK(ConvexSetR::nonneg_orthant(2).support(VecR{{-0.1, -1.0}}) == 0.0);
  // halfspace support: finite exactly on the ray through the normal
  ConvexSetR hs = ConvexSetR::halfspace(VecR{{0.0, 2.0}}, 4.0);
  CHECK(hs.support(VecR{{0.0, 1.0}}) == doctest::Approx(2.0));
  CHECK(std::isinf(hs.support(VecR{{1.0, 1.0}})));
  CHECK(std::isinf(hs.support(VecR{{0.0, -1.0}})));
  // affine {x : x1 + 2 x2 = 1}: finite on multiples of (1,2)
  ConvexSetR aff = ConvexSetR::affine({VecR{{1.0, 2.0}}}, VecR{{1.0}});
  CHECK(aff.support(VecR{{1.0, 2.0}}) == doctest::Approx(1.0));
  CHECK(std::isinf(aff.support(VecR{{1.0, 0.0}})));
  // subspace: zero on the orthogonal complement
  ConvexSetR sub = ConvexSetR::subspace({VecR{{0.6, 0.8}}});
  CHECK(sub.support(VecR{{-0.8, 0.6}}) == 0.0);
  CHECK(std::isinf(sub.support(VecR{{0.6, 0.8}})));
}

TEST_CASE("support dominates inner products with set members") {
  std::mt19937_64 rng(31);
  for (auto& C : catalog_2d()) {
    for (int t = 0; t < 30; ++t) {
      VecR u = random_vec2(rng);
      VecR member = C.project(random_vec2(rng));
      double s = C.support(u);
      CHECK(s >= dot(member, u) - 1e-8);
    }
  }
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(ConvexSetR::interval(2.0, 1.0), InvalidInputError);
  CHECK_THROWS_AS(ConvexSetR::l2_ball(VecR{{0.0}}, -1.0), InvalidInputError);
  CHECK_THROWS_AS(ConvexSetR::halfspace(VecR{{0.0, 0.0}}, 1.0), InvalidInputError);
  VecR lo{{0.0, 0.0}};
  VecR hi{{1.0}};
  CHECK_THROWS_AS(ConvexSetR::box(lo, hi), InvalidInputError);
}
