#pragma once

#include "symstab/rational.hpp"

namespace symstab {

// Numerical divisor class s*C1 + b*f on a ruled surface over the curve.
struct NumClass {
  i64 s = 0;
  i64 b = 0;
  bool operator==(const NumClass&) const = default;
};

struct SurfaceContext {
  int g = 2;  // base genus
  i64 e = 0;  // C1^2 = degree of the defining bundle
};

inline void validate(const SurfaceContext& ctx) {
  if (ctx.g < 2) fail(Errc::Validation, "base genus must be at least 2");
}

// Bilinear extension of C1^2 = e, C1.f = 1, f^2 = 0.
inline i64 intersect(const SurfaceContext& ctx, const NumClass& d1, const NumClass& d2) {
  validate(ctx);
  return d1.s * d2.s * ctx.e + d1.s * d2.b + d2.s * d1.b;
}

inline i64 self_intersection(const SurfaceContext& ctx, const NumClass& d) {
  return intersect(ctx, d, d);
}

// For e = 0 a k-secant class kC1 + bf has square 2kb, so it sits on the cone
// boundary exactly when b = 0.
inline bool ksection_zero_selfint_condition(const SurfaceContext& ctx, i64 k, i64 b) {
  validate(ctx);
  if (ctx.e != 0) fail(Errc::DegreeNotZero, "condition assumes degree-normalized surface (e = 0)");
  if (k < 1) fail(Errc::Validation, "k-section needs k >= 1");
  return b == 0;
}

// Genus of a smooth k-section over a genus-g base.
inline i64 ksection_genus(i64 g, i64 k) {
  if (k < 1) fail(Errc::Validation, "k-section needs k >= 1");
  return k * g - k + 1;
}

inline NumClass canonical_class(const SurfaceContext& ctx) {
  validate(ctx);
  return NumClass{-2, 2 * ctx.g - 2};
}

// Numerical necessary condition for the relative canonical sheaf of the
// k-section kC1 + bf to restrict trivially: D . ((k-2)C1 + bf) = 0.
inline bool relative_canonical_triviality(const SurfaceContext& ctx, i64 k, i64 b) {
  validate(ctx);
  if (k < 1) fail(Errc::Validation, "k-section needs k >= 1");
  NumClass d{k, b};
  NumClass t{k - 2, b};
  return intersect(ctx, d, t) == 0;
}

struct LineCorrespondence {
  NumClass cls;
  i64 selfint = 0;
};

// A line subbundle of degree deg_l inside the k-th symmetric power matches
// the k-secant class (k, deg_l).
inline LineCorrespondence line_subbundle_correspondence(const SurfaceContext& ctx, i64 k, i64 deg_l) {
  validate(ctx);
  if (k < 1) fail(Errc::Validation, "k-section needs k >= 1");
  NumClass d{k, deg_l};
  return LineCorrespondence{d, self_intersection(ctx, d)};
}

}  // namespace symstab
