#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symstab/bundle.hpp"
#include "symstab/surface.hpp"

namespace symstab {

// Curve tracked through a sequence of elementary transformations: a
// k-section with fiber coefficient b, so selfint = k^2 e + 2kb at all times.
struct TrackedCurve {
  std::string id;
  int k = 1;
  i64 b = 0;
  i64 selfint = 0;
};

struct ElmIncidence {
  std::string point;
  std::string fiber;
  std::map<std::string, int> mu;  // curve id -> multiplicity at the point
  std::optional<std::string> iota_of;
};

struct ElmState {
  int genus = 2;
  i64 e = 0;
  std::vector<TrackedCurve> curves;
  std::vector<ElmIncidence> transcript;
  std::set<std::string> used_points;
  std::set<std::string> forbidden_points;  // deck partners of used points
  std::map<std::string, std::string> fiber_owner;
  std::map<std::string, std::string> point_fiber;
  bool conjugate_guard = false;
  TorsionVector det_torsion;

  const TrackedCurve* find(const std::string& id) const {
    for (const auto& c : curves)
      if (c.id == id) return &c;
    return nullptr;
  }
};

// Starting state for the decomposable surface with defining class ell: two
// disjoint minimal sections C0, Cinf and an irreducible bisection B, all of
// self-intersection zero.
inline ElmState init_decomposable(int g, const TorsionVector& ell) {
  if (g < 2) fail(Errc::Validation, "base genus must be at least 2");
  if (ell.rank() != 2 * g) fail(Errc::Validation, "defining class must have rank 2g");
  if (ell.is_zero()) fail(Errc::NotTwoTorsion, "nontrivial two-torsion class required");
  if (ell.order() != 2) fail(Errc::NotTwoTorsion, "defining class must have order exactly 2");
  ElmState st;
  st.genus = g;
  st.e = 0;
  st.det_torsion = ell;
  st.curves = {{"B", 2, 0, 0}, {"C0", 1, 0, 0}, {"Cinf", 1, 0, 0}};
  return st;
}

// Starting state for the trivial split surface (both sections disjoint).
inline ElmState init_trivial_split(int g) {
  if (g < 2) fail(Errc::Validation, "base genus must be at least 2");
  ElmState st;
  st.genus = g;
  st.e = 0;
  st.det_torsion = TorsionVector::zero(2 * g);
  st.curves = {{"C0", 1, 0, 0}, {"Cinf", 1, 0, 0}};
  return st;
}

// One elementary transformation at a point with the given incidence
// multiplicities.  The ambient degree drops by one; a curve of section
// multiplicity k with multiplicity mu at the center picks up
//   selfint += (k - mu)^2 - mu^2,   b += k - mu,
// the two k = 1 cases being the classical -1 / +1 rules.
inline ElmState elm_step(const ElmState& state, const ElmIncidence& inc) {
  if (inc.point.empty() || inc.fiber.empty())
    fail(Errc::Validation, "elementary transformation needs point and fiber ids");

  for (const auto& [id, mu] : inc.mu) {
    const TrackedCurve* c = state.find(id);
    if (!c) fail(Errc::Validation, "unknown tracked curve '" + id + "'");
    if (mu < 0) fail(Errc::Validation, "negative incidence multiplicity");
    if (mu > c->k)
      fail(Errc::MultiplicityExceedsDegree, "multiplicity " + std::to_string(mu) +
                                                " exceeds section degree of '" + id + "'");
  }

  auto owner = state.fiber_owner.find(inc.fiber);
  if (owner != state.fiber_owner.end() && owner->second != inc.point)
    fail(Errc::SameFiberConflict,
         "fiber '" + inc.fiber + "' already carries the distinct point '" + owner->second + "'");
  auto placed = state.point_fiber.find(inc.point);
  if (placed != state.point_fiber.end() && placed->second != inc.fiber)
    fail(Errc::Validation, "point '" + inc.point + "' already lives on fiber '" + placed->second + "'");

  if (state.conjugate_guard) {
    if (state.forbidden_points.count(inc.point))
      fail(Errc::ConjugatePairViolation,
           "point '" + inc.point + "' is the deck partner of a point already used");
    if (inc.iota_of && state.used_points.count(*inc.iota_of))
      fail(Errc::ConjugatePairViolation,
           "point '" + inc.point + "' pairs with already-used point '" + *inc.iota_of + "'");
  }

  ElmState next = state;
  next.e -= 1;
  for (auto& c : next.curves) {
    auto it = inc.mu.find(c.id);
    i64 mu = it == inc.mu.end() ? 0 : it->second;
    i64 k = c.k;
    c.selfint += (k - mu) * (k - mu) - mu * mu;
    c.b += k - mu;
  }
  next.transcript.push_back(inc);
  next.used_points.insert(inc.point);
  if (inc.iota_of) next.forbidden_points.insert(*inc.iota_of);
  next.fiber_owner[inc.fiber] = inc.point;
  next.point_fiber[inc.point] = inc.fiber;
  return next;
}

struct DeterminantRecord {
  i64 degree = 0;
  TorsionVector torsion;
  i64 twist_degree = 0;
  i64 post_twist_degree = 0;
};

struct GenerationReport {
  int n = 0;
  ElmState state;
  std::vector<ElmState> trail;  // state after each step
  i64 bisection_selfint = 0;
  i64 section_selfint = 0;
  bool bisection_zero = false;
  bool section_matches_2n = false;
  bool degree_matches = false;
  i64 c0_dot_bisection = 0;
  i64 c0_dot_fiber = 1;
  DeterminantRecord determinant;
};

// The orthogonal-bundle generation pipeline: 2n transformations at points of
// the bisection, never on C0, with no deck-conjugate pair among the centers.
// Tangential data enters as infinitely-near chains (repeated point ids), so
// each step meets the bisection with multiplicity exactly one.
inline GenerationReport run_generation(int g, const TorsionVector& ell, int n,
                                       const std::vector<ElmIncidence>& pattern) {
  if (n < 0) fail(Errc::Validation, "negative step count");
  if (static_cast<int>(pattern.size()) != 2 * n)
    fail(Errc::InvalidPattern, "generation pattern must contain exactly 2n entries");

  ElmState st = init_decomposable(g, ell);
  st.conjugate_guard = true;

  GenerationReport rep;
  rep.n = n;
  {
    SurfaceContext ctx{g, st.e};
    rep.c0_dot_bisection = intersect(ctx, NumClass{1, 0}, NumClass{2, 0});
    rep.c0_dot_fiber = intersect(ctx, NumClass{1, 0}, NumClass{0, 1});
  }

  for (const auto& inc : pattern) {
    for (const auto& [id, mu] : inc.mu) {
      if (id == "B") {
        if (mu != 1)
          fail(Errc::InvalidPattern,
               "generation points meet the bisection transversally (multiplicity 1)");
      } else if (id == "C0" || id == "Cinf") {
        if (mu != 0)
          fail(Errc::InvalidPattern, "generation points avoid the minimal sections");
      } else {
        fail(Errc::Validation, "unknown curve '" + id + "' in generation pattern");
      }
    }
    if (!inc.mu.count("B"))
      fail(Errc::InvalidPattern, "every generation point lies on the bisection");
    st = elm_step(st, inc);
    rep.trail.push_back(st);
  }

  rep.state = st;
  rep.bisection_selfint = st.find("B")->selfint;
  rep.section_selfint = st.find("C0")->selfint;
  rep.bisection_zero = (rep.bisection_selfint == 0);
  rep.section_matches_2n = (rep.section_selfint == 2 * n);
  rep.degree_matches = (st.e == -2 * n);
  rep.determinant = DeterminantRecord{-2 * n, ell, n, 0};
  return rep;
}

struct SplitRunReport {
  int n = 0;
  ElmState state;
  std::vector<ElmState> trail;
  i64 degree_c0 = 0;    // degree of the line subbundle tracked by C0
  i64 degree_cinf = 0;  // degree of the line subbundle tracked by Cinf
  i64 twist_degree = 0;
  SplitStability verdict_after_twist = SplitStability::StrictlySemistable;
};

// Transformations of the trivial split surface at 2n points divided between
// the disjoint sections; reports the two resulting line-subbundle degrees and
// the split verdict after the degree-normalizing twist.
inline SplitRunReport double_section_split_run(int g, int n,
                                               const std::vector<ElmIncidence>& pattern) {
  if (n < 0) fail(Errc::Validation, "negative step count");
  if (static_cast<int>(pattern.size()) != 2 * n)
    fail(Errc::InvalidPattern, "split-run pattern must contain exactly 2n entries");

  ElmState st = init_trivial_split(g);
  std::map<std::string, std::string> fiber_section;

  SplitRunReport rep;
  rep.n = n;
  for (const auto& inc : pattern) {
    std::string section;
    for (const auto& [id, mu] : inc.mu) {
      if (id != "C0" && id != "Cinf")
        fail(Errc::Validation, "unknown curve '" + id + "' in split-run pattern");
      if (mu == 1) {
        if (!section.empty())
          fail(Errc::SameFiberConflict, "a point cannot lie on both disjoint sections");
        section = id;
      } else if (mu != 0) {
        fail(Errc::InvalidPattern, "sections carry multiplicity at most 1");
      }
    }
    if (section.empty())
      fail(Errc::InvalidPattern, "every split-run point lies on one of the sections");
    auto seen = fiber_section.find(inc.fiber);
    if (seen != fiber_section.end() && seen->second != section)
      fail(Errc::SameFiberConflict,
           "fiber '" + inc.fiber + "' carries points of both sections");
    fiber_section[inc.fiber] = section;
    st = elm_step(st, inc);
    rep.trail.push_back(st);
  }

  rep.state = st;
  rep.degree_c0 = -st.find("C0")->b;
  rep.degree_cinf = -st.find("Cinf")->b;
  rep.twist_degree = n;

  SymDecomp twisted;
  int rank = 2 * g;
  twisted.add(LineClass{rep.degree_c0 + n, TorsionVector::zero(rank), {}});
  twisted.add(LineClass{rep.degree_cinf + n, TorsionVector::zero(rank), {}});
  rep.verdict_after_twist = split_stability(twisted);
  return rep;
}

}  // namespace symstab
