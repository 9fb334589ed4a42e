#include <doctest.h>

#include <random>

#include "symstab/surface.hpp"

using namespace symstab;

TEST_CASE("intersection pairing basics") {
  SurfaceContext ctx{2, 0};
  CHECK(intersect(ctx, NumClass{0, 1}, NumClass{0, 1}) == 0);  // f.f
  CHECK(intersect(ctx, NumClass{1, 0}, NumClass{0, 1}) == 1);  // C1.f
  SurfaceContext deg{2, 3};
  CHECK(self_intersection(deg, NumClass{1, 0}) == 3);  // C1^2 = e
  CHECK_THROWS_AS(intersect(SurfaceContext{1, 0}, NumClass{}, NumClass{}), Error);
}

TEST_CASE("self-intersection closed form") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<i64> small(-9, 9);
  for (int t = 0; t < 200; ++t) {
    i64 k = small(rng), b = small(rng), e = small(rng);
    SurfaceContext ctx{3, e};
    CHECK(self_intersection(ctx, NumClass{k, b}) == k * k * e + 2 * k * b);
  }
}

TEST_CASE("pairing is symmetric and bilinear") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<i64> small(-9, 9);
  for (int t = 0; t < 200; ++t) {
    SurfaceContext ctx{2, small(rng)};
    NumClass a{small(rng), small(rng)}, b{small(rng), small(rng)}, c{small(rng), small(rng)};
    CHECK(intersect(ctx, a, b) == intersect(ctx, b, a));
    NumClass sum{b.s + c.s, b.b + c.b};
    CHECK(intersect(ctx, a, sum) == intersect(ctx, a, b) + intersect(ctx, a, c));
  }
}

TEST_CASE("zero self-intersection boundary condition at e = 0") {
  SurfaceContext ctx{2, 0};
  CHECK(ksection_zero_selfint_condition(ctx, 2, 0));
  CHECK_FALSE(ksection_zero_selfint_condition(ctx, 3, 1));
  CHECK(ksection_zero_selfint_condition(ctx, 6, 0));
  CHECK_THROWS_AS(ksection_zero_selfint_condition(SurfaceContext{2, 1}, 2, 0), Error);
  std::mt19937 rng(41);
  std::uniform_int_distribution<i64> kd(1, 12), bd(-6, 6);
  for (int t = 0; t < 100; ++t) {
    i64 k = kd(rng), b = bd(rng);
    CHECK(ksection_zero_selfint_condition(ctx, k, b) ==
          (self_intersection(ctx, NumClass{k, b}) == 0));
  }
}

TEST_CASE("genus of smooth multisections") {
  CHECK(ksection_genus(2, 2) == 3);
  for (i64 g = 2; g <= 6; ++g) CHECK(ksection_genus(g, 1) == g);
  CHECK(ksection_genus(2, 6) == 7);
}

TEST_CASE("genus formula matches adjunction") {
  for (i64 g = 2; g <= 6; ++g) {
    SurfaceContext ctx{static_cast<int>(g), 0};
    NumClass kx = canonical_class(ctx);
    for (i64 k = 1; k <= 12; ++k) {
      NumClass d{k, 0};
      i64 adj = intersect(ctx, d, NumClass{d.s + kx.s, d.b + kx.b});
      CHECK(2 * ksection_genus(g, k) - 2 == adj);
    }
  }
}

TEST_CASE("relative canonical triviality condition") {
  SurfaceContext ctx{2, 0};
  CHECK(relative_canonical_triviality(ctx, 3, 0));
  CHECK(relative_canonical_triviality(ctx, 2, 0));
  CHECK_FALSE(relative_canonical_triviality(ctx, 3, 2));
  for (i64 k = 2; k <= 10; ++k)
    for (i64 b = -4; b <= 4; ++b)
      CHECK(relative_canonical_triviality(ctx, k, b) == (b == 0));
}

TEST_CASE("line subbundles match k-secant classes") {
  SurfaceContext ctx0{2, 0};
  CHECK(line_subbundle_correspondence(ctx0, 4, 0).selfint == 0);
  CHECK(line_subbundle_correspondence(ctx0, 1, 3).selfint == 6);  // 2 deg L
  SurfaceContext ctx2{2, 2};
  CHECK(line_subbundle_correspondence(ctx2, 1, -1).selfint == 0);
  CHECK(line_subbundle_correspondence(ctx2, 1, -1).cls == NumClass{1, -1});
}
