#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symstab/bundle.hpp"

namespace symstab {

enum class Stab { Stable, StrictlySemistable, NotStable, Unknown };

inline const char* stab_name(Stab s) {
  switch (s) {
    case Stab::Stable: return "stable";
    case Stab::StrictlySemistable: return "strictly-semistable";
    case Stab::NotStable: return "not-stable";
    case Stab::Unknown: return "unknown";
  }
  return "?";
}

inline Stab stab_parse(const std::string& s) {
  if (s == "stable") return Stab::Stable;
  if (s == "strictly-semistable") return Stab::StrictlySemistable;
  if (s == "not-stable") return Stab::NotStable;
  if (s == "unknown") return Stab::Unknown;
  fail(Errc::Validation, "unknown stability label '" + s + "'");
}

// Rule identifiers attached to verdicts; descriptive, stable across runs.
namespace rules {
inline constexpr const char* split_decomposable = "split-decomposable";
inline constexpr const char* pushforward_dichotomy = "pushforward-stable-dichotomy";
inline constexpr const char* pushforward_splits = "pushforward-splits";
inline constexpr const char* orthogonal_square = "orthogonal-square-strictly-semistable";
inline constexpr const char* formal_assumption = "formal-stable-assumption";
inline constexpr const char* formal_gate_only = "formal-route-through-gate";
inline constexpr const char* line_witness_2k = "prym-order-divides-2k";
inline constexpr const char* cube_line_witness = "sym-cube-line-witness";
inline constexpr const char* no_cube_line_witness = "no-line-witness-at-cube";
inline constexpr const char* triple_cover_rank2 = "sym-cube-rank2-triple-cover";
inline constexpr const char* triple_cover_exhausted = "rank2-witness-requires-triple-cover";
inline constexpr const char* square_propagates = "square-destabilization-propagates";
inline constexpr const char* upward_propagation = "line-witness-propagates-upward";
inline constexpr const char* twist_order_screen = "twist-order-divides-2k-minus-2";
inline constexpr const char* ksection_screen_void = "ksection-torsion-screen-inapplicable";
inline constexpr const char* gate_all_stable = "gate-all-stable";
inline constexpr const char* gate_square_rank1 = "gate-square-rank1";
inline constexpr const char* gate_cube_rank2 = "gate-cube-rank2";
inline constexpr const char* gate_fourth_rank2 = "gate-fourth-rank2";
inline constexpr const char* gate_fifth_forces_sixth = "gate-fifth-forces-sixth-rank3";
inline constexpr const char* gate_sixth_rank3 = "gate-sixth-rank3";
inline constexpr const char* etale_split_cyclic = "torsion-split-cyclic-trivialization";
inline constexpr const char* etale_pushforward = "pushforward-double-then-cyclic";
}  // namespace rules

struct Witness {
  std::string kind;  // "split-summands", "orthogonal-value", "line-subbundle", "rank2-subbundle", "rank2-twists"
  std::vector<LineClass> lines;
  std::string note;
  bool operator==(const Witness&) const = default;
};

struct StabilityVerdict {
  Stab status = Stab::Unknown;
  std::vector<std::string> rule_tags;
  std::optional<Witness> witness;
  std::string reason;
};

struct S2Report {
  StabilityVerdict bundle;
  StabilityVerdict sym_square;
};

namespace detail {

inline StabilityVerdict verdict(Stab s, std::vector<std::string> tags,
                                std::optional<Witness> w = std::nullopt, std::string reason = {}) {
  return StabilityVerdict{s, std::move(tags), std::move(w), std::move(reason)};
}

inline Stab from_split(SplitStability s) {
  switch (s) {
    case SplitStability::Stable: return Stab::Stable;
    case SplitStability::StrictlySemistable: return Stab::StrictlySemistable;
    case SplitStability::Unstable: return Stab::NotStable;
  }
  return Stab::Unknown;
}

inline std::vector<LineClass> decomp_lines(const SymDecomp& d) {
  std::vector<LineClass> out;
  for (const auto& [l, m] : d.parts)
    for (i64 i = 0; i < m; ++i) out.push_back(l);
  return out;
}

// Base-side class a with pullback(a) equal to the given pullback-image class.
inline TorsionVector pullback_preimage(const Covering& cov, const TorsionClass& x) {
  i64 n = 2 * cov.genus();
  Budget b{1ULL << (n + 2)};
  TorsionVector found;
  bool ok = false;
  // The preimage differs from the canonical base representative by the image
  // of a glue element, which is 2-torsion, so scanning J_2 shifts suffices.
  for_each_torsion(static_cast<int>(n), 2, b, [&](const TorsionVector& d) {
    if (ok) return;
    TorsionVector cand = cov.base_user(x) + d;
    if (cov.pullback(cand) == x) {
      found = cand;
      ok = true;
    }
  });
  if (!ok) fail(Errc::Validation, "class is not in the pullback image");
  return found;
}

inline std::pair<LineClass, LineClass> pullback_split_lines(const PushforwardBundle& pb) {
  TorsionVector a = pullback_preimage(pb.cov, pb.r);
  LineClass l1 = pb.twist.mul(LineClass::of_torsion(a));
  LineClass l2 = l1.mul(LineClass::of_torsion(pb.cov.ell()));
  if (l2 < l1) std::swap(l1, l2);
  return {l1, l2};
}

}  // namespace detail

// Stability of the descriptor and of its symmetric square.  Pushforward data
// is stable exactly when the class avoids the pullback image; its square is
// always strictly semistable, with the two-torsion orthogonality value as
// witness.
inline S2Report s2_status(const BundleDescriptor& e) {
  S2Report rep;
  if (const auto* s = std::get_if<SplitBundle>(&e)) {
    SymDecomp self;
    self.add(s->line.inv());
    self.add(s->line);
    rep.bundle = detail::verdict(detail::from_split(split_stability(self)),
                                 {rules::split_decomposable},
                                 Witness{"split-summands", detail::decomp_lines(self), ""});
    SymDecomp square = sym_power_split(s->line, 2);
    rep.sym_square = detail::verdict(detail::from_split(split_stability(square)),
                                     {rules::split_decomposable},
                                     Witness{"split-summands", detail::decomp_lines(square), ""});
    return rep;
  }
  if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
    make_pushforward(p->cov, p->r, p->twist);  // revalidate
    if (p->cov.in_pullback_image(p->r)) {
      auto [l1, l2] = detail::pullback_split_lines(*p);
      rep.bundle = detail::verdict(Stab::StrictlySemistable, {rules::pushforward_dichotomy},
                                   Witness{"split-summands", {l1, l2}, "descriptor splits"});
    } else {
      rep.bundle = detail::verdict(Stab::Stable, {rules::pushforward_dichotomy});
    }
    rep.sym_square =
        detail::verdict(Stab::StrictlySemistable, {rules::orthogonal_square},
                        Witness{"orthogonal-value", {LineClass::of_torsion(p->cov.ell())}, ""});
    return rep;
  }
  rep.bundle = detail::verdict(Stab::Stable, {rules::formal_assumption});
  rep.sym_square = detail::verdict(Stab::Stable, {rules::formal_assumption});
  return rep;
}

// Does a line subbundle destabilize the symmetric cube?  For pushforward data
// with the descriptor stable this happens exactly when the class order
// divides six; the witness is the inverse of the quarter twist.
inline StabilityVerdict s3_line_subbundle_status(const BundleDescriptor& e) {
  if (const auto* s = std::get_if<SplitBundle>(&e)) {
    SymDecomp cube = sym_power_split(s->line, 3);
    return detail::verdict(Stab::NotStable, {rules::split_decomposable},
                           Witness{"split-summands", detail::decomp_lines(cube), ""});
  }
  if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
    make_pushforward(p->cov, p->r, p->twist);
    if (p->cov.in_pullback_image(p->r)) {
      auto [l1, l2] = detail::pullback_split_lines(*p);
      return detail::verdict(Stab::NotStable, {rules::pushforward_splits},
                             Witness{"split-summands", {l1, l2}, "descriptor splits"});
    }
    i64 m = p->cov.class_order(p->r);
    if (6 % m == 0) {
      return detail::verdict(Stab::NotStable, {rules::cube_line_witness, rules::line_witness_2k},
                             Witness{"line-subbundle", {p->twist.inv()}, "order " + std::to_string(m)});
    }
    return detail::verdict(Stab::Stable, {rules::no_cube_line_witness}, std::nullopt,
                           "class order " + std::to_string(m) + " does not divide 6");
  }
  return detail::verdict(Stab::Unknown, {rules::formal_gate_only}, std::nullopt,
                         "formal descriptor carries no line-subbundle data");
}

struct MinimalKReport {
  std::optional<i64> sufficient_k;
  i64 necessary_floor = 2;
  std::vector<std::string> certificates;
};

// Interval report for the least power destabilized by a line subbundle.
// Sufficiency: the least k >= 2 with order(R) | 2k.  The floor combines the
// twist-order screen (order(A) | 2(k-1)) with the k-section torsion screen,
// which never excludes anything here because its no-smaller-section premise
// already fails for these descriptors.  No claim of exact minimality is made.
inline MinimalKReport minimal_line_destabilized_k(const PushforwardBundle& pb) {
  make_pushforward(pb.cov, pb.r, pb.twist);
  if (pb.cov.in_pullback_image(pb.r))
    fail(Errc::InvalidDescriptor,
         "minimal-power report requires stable data (class outside the pullback image)");
  i64 m = pb.cov.class_order(pb.r);

  MinimalKReport rep;
  i64 k = 2;
  while ((2 * k) % m != 0) ++k;
  rep.sufficient_k = k;
  rep.certificates.push_back(rules::line_witness_2k);

  if (k == 2) {
    rep.necessary_floor = 2;
    rep.certificates.push_back(rules::orthogonal_square);
  } else {
    i64 a_order = pb.twist.order();
    i64 floor = 3;
    while ((2 * (floor - 1)) % a_order != 0) ++floor;
    rep.necessary_floor = floor;
    rep.certificates.push_back(rules::twist_order_screen);
    rep.certificates.push_back(rules::ksection_screen_void);
  }
  return rep;
}

// Verdict for the k-th symmetric power of a descriptor, with the cheapest
// certificate chain recorded in the tags.
inline StabilityVerdict sym_power_status(const BundleDescriptor& e, i64 k) {
  if (k < 2) fail(Errc::Validation, "symmetric power status needs k >= 2");
  if (const auto* s = std::get_if<SplitBundle>(&e)) {
    SymDecomp d = sym_power_split(s->line, k);
    return detail::verdict(detail::from_split(split_stability(d)), {rules::split_decomposable},
                           Witness{"split-summands", detail::decomp_lines(d), ""});
  }
  if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
    make_pushforward(p->cov, p->r, p->twist);
    if (p->cov.in_pullback_image(p->r)) {
      auto [l1, l2] = detail::pullback_split_lines(*p);
      return detail::verdict(Stab::StrictlySemistable, {rules::pushforward_splits},
                             Witness{"split-summands", {l1, l2}, "descriptor splits"});
    }
    LineClass value = LineClass::of_torsion(p->cov.ell());
    if (k == 2)
      return detail::verdict(Stab::StrictlySemistable, {rules::orthogonal_square},
                             Witness{"orthogonal-value", {value}, ""});
    i64 m = p->cov.class_order(p->r);
    i64 k0 = 2;
    while ((2 * k0) % m != 0) ++k0;
    if (k0 == k)
      return detail::verdict(Stab::NotStable, {rules::line_witness_2k},
                             Witness{"line-subbundle", {p->twist.inv()}, "order " + std::to_string(m)});
    if (k0 < k)
      return detail::verdict(
          Stab::NotStable, {rules::line_witness_2k, rules::upward_propagation},
          Witness{"rank2-subbundle", {p->twist.inv()},
                  "power " + std::to_string(k0) + " line witness tensored up to " + std::to_string(k)});
    return detail::verdict(
        Stab::NotStable, {rules::orthogonal_square, rules::upward_propagation},
        Witness{"rank2-subbundle", {value.inv()}, "square witness tensored up to " + std::to_string(k)});
  }
  return detail::verdict(Stab::Unknown, {rules::formal_gate_only}, std::nullopt,
                         "formal descriptor: use the gate");
}

// Presentation of a symmetric square as the pushforward of a two-torsion
// class along a cyclic triple cover.
struct Sym2TripleCover {
  Covering cov;        // degree 3
  TorsionClass square_class;  // order dividing 2
};

using S3Rank2Input = std::variant<BundleDescriptor, Sym2TripleCover>;

// Rank-2 destabilization of the symmetric cube.  A triple-cover presentation
// with the class outside the pullback image certifies the exceptional case,
// with the two rank-2 subbundles given by the order-3 twists; a strictly
// semistable square propagates upward; a formally stable square leaves no
// rank-2 witness.
inline StabilityVerdict s3_rank2_status(const S3Rank2Input& input) {
  if (const auto* pres = std::get_if<Sym2TripleCover>(&input)) {
    if (pres->cov.degree() != 3)
      fail(Errc::InvalidDescriptor, "square presentation requires a cyclic triple cover");
    if (!pres->cov.scaled(pres->square_class, 2).is_zero())
      fail(Errc::InvalidDescriptor, "square presentation class must be two-torsion");
    if (pres->cov.in_pullback_image(pres->square_class)) {
      return detail::verdict(Stab::NotStable, {rules::square_propagates},
                             Witness{"rank2-subbundle", {}, "square is strictly semistable"});
    }
    LineClass l3 = LineClass::of_torsion(pres->cov.ell());
    return detail::verdict(Stab::NotStable, {rules::triple_cover_rank2},
                           Witness{"rank2-twists", {l3.inv(), l3}, "descriptor tensored by the order-3 twists"});
  }
  const auto& e = std::get<BundleDescriptor>(input);
  S2Report s2 = s2_status(e);
  if (s2.sym_square.status == Stab::Stable)
    return detail::verdict(Stab::Stable, {rules::triple_cover_exhausted}, std::nullopt,
                           "stable square admits no rank-2 witness outside the triple-cover family");
  std::optional<Witness> w;
  if (s2.sym_square.witness) {
    w = Witness{"rank2-subbundle", s2.sym_square.witness->lines,
                "descriptor tensored against the square witness"};
  }
  return detail::verdict(Stab::NotStable, {rules::square_propagates}, std::move(w));
}

struct GateReport {
  bool all_stable = false;
  std::optional<int> failing_power;
  std::string case_tag;
};

// All-powers gate: stable for every power as soon as the five low powers are
// stable; otherwise reports the first failure with its reduction case.
inline GateReport higher_gate(const std::map<int, Stab>& statuses) {
  for (int m = 2; m <= 6; ++m)
    if (!statuses.count(m))
      fail(Errc::IncompleteInput, "gate needs statuses for powers 2 through 6");
  for (int m = 2; m <= 6; ++m) {
    if (statuses.at(m) != Stab::Stable) {
      const char* tag = rules::gate_square_rank1;
      if (m == 3) tag = rules::gate_cube_rank2;
      if (m == 4) tag = rules::gate_fourth_rank2;
      if (m == 5) tag = rules::gate_fifth_forces_sixth;
      if (m == 6) tag = rules::gate_sixth_rank3;
      return GateReport{false, m, tag};
    }
  }
  return GateReport{true, std::nullopt, rules::gate_all_stable};
}

struct EtaleReport {
  bool trivial = false;
  std::optional<i64> cover_degree;
  std::string rule;
};

// Finite-cover trivialization: torsion split data is trivialized by the
// cyclic cover of its order; pushforward data by the double cover composed
// with the cyclic cover killing the class.  Formal generators obstruct it.
inline EtaleReport etale_trivial(const BundleDescriptor& e) {
  if (const auto* s = std::get_if<SplitBundle>(&e)) {
    if (!s->line.is_torsion()) return EtaleReport{false, std::nullopt, rules::etale_split_cyclic};
    return EtaleReport{true, s->line.order(), rules::etale_split_cyclic};
  }
  if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
    make_pushforward(p->cov, p->r, p->twist);
    return EtaleReport{true, 2 * p->cov.class_order(p->r), rules::etale_pushforward};
  }
  fail(Errc::InvalidDescriptor, "etale-triviality is decided for split and pushforward data only");
}

enum class CountFamily { DoubleCovers, S2Locus2to1, S3LineWitness, PrymJn };

inline const char* count_family_name(CountFamily f) {
  switch (f) {
    case CountFamily::DoubleCovers: return "double-covers";
    case CountFamily::S2Locus2to1: return "s2-locus-2to1";
    case CountFamily::S3LineWitness: return "s3-line";
    case CountFamily::PrymJn: return "prym-jn";
  }
  return "?";
}

struct CountReport {
  CountFamily family = CountFamily::DoubleCovers;
  int genus = 2;
  i64 n = 0;
  std::optional<i64> value;                 // DoubleCovers, PrymJn
  std::optional<i64> total, fixed, pairs;   // S2Locus2to1
  std::optional<i64> raw, paired, a_choice_multiplicity;  // S3LineWitness
  bool identity_ok = true;
};

// Torsion-level counting of the exceptional families over the canonical
// double cover of the given genus.  Identification multiplicities are
// reported explicitly, never silently quotiented.
inline CountReport count_exceptional(int genus, CountFamily family, i64 n = 0,
                                     const Budget& budget = {}) {
  CountReport rep;
  rep.family = family;
  rep.genus = genus;
  rep.n = n;
  if (family == CountFamily::DoubleCovers) {
    rep.value = static_cast<i64>(torsion_count(2 * genus, 2)) - 1;
    return rep;
  }
  Covering cov = canonical_double_cover(genus);
  if (family == CountFamily::PrymJn) {
    if (n < 1) fail(Errc::Validation, "prym count needs a torsion level n >= 1");
    rep.value = static_cast<i64>(cov.prym_torsion_count(n, budget));
    return rep;
  }
  if (family == CountFamily::S2Locus2to1) {
    if (n < 1) fail(Errc::Validation, "pairing count needs a torsion level n >= 1");
    auto classes = cov.prym_torsion_classes(n, budget);
    i64 fixed = 0;
    std::set<std::pair<TorsionClass, TorsionClass>> orbits;
    for (const auto& x : classes) {
      TorsionClass y = cov.involution(x);
      if (y == x) ++fixed;
      orbits.insert(x < y ? std::make_pair(x, y) : std::make_pair(y, x));
    }
    rep.total = static_cast<i64>(classes.size());
    rep.fixed = fixed;
    rep.pairs = static_cast<i64>(orbits.size());
    rep.identity_ok = (*rep.pairs == (*rep.total + *rep.fixed) / 2);
    return rep;
  }
  // S3LineWitness: classes of order dividing 6 but not 2, paired 2-to-1 by
  // the involution; the twist choice contributes a separate multiplicity.
  auto j6 = cov.prym_torsion_classes(6, budget);
  auto j2 = cov.prym_torsion_classes(2, budget);
  std::set<TorsionClass> small(j2.begin(), j2.end());
  std::set<std::pair<TorsionClass, TorsionClass>> orbits;
  i64 raw = 0;
  for (const auto& x : j6) {
    if (small.count(x)) continue;
    ++raw;
    TorsionClass y = cov.involution(x);
    orbits.insert(x < y ? std::make_pair(x, y) : std::make_pair(y, x));
  }
  rep.raw = raw;
  rep.paired = static_cast<i64>(orbits.size());
  rep.a_choice_multiplicity = static_cast<i64>(torsion_count(2 * genus, 2));
  rep.identity_ok = (raw == 2 * *rep.paired);
  return rep;
}

// Candidate two-torsion twists M with E isomorphic to F x M at descriptor
// level.  Split data matches up to inversion; pushforward data matches when
// the classes agree up to the involution and a pullback shift compatible
// with the twists.  Distinct presentation kinds are not compared.
inline std::vector<TorsionVector> twist_equivalence_candidates(const BundleDescriptor& e,
                                                               const BundleDescriptor& f) {
  std::set<TorsionVector> out;
  if (const auto* se = std::get_if<SplitBundle>(&e)) {
    if (const auto* sf = std::get_if<SplitBundle>(&f)) {
      for (const LineClass& cand :
           {se->line.mul(sf->line.inv()), se->line.mul(sf->line)}) {
        if (cand.is_torsion() && cand.torsion.scaled(2).is_zero()) out.insert(cand.torsion);
      }
    }
    return {out.begin(), out.end()};
  }
  if (const auto* pe = std::get_if<PushforwardBundle>(&e)) {
    const auto* pf = std::get_if<PushforwardBundle>(&f);
    if (!pf || !pe->cov.same_model(pf->cov)) return {};
    const Covering& cov = pe->cov;
    TorsionClass flipped = cov.involution(pf->r);
    for_each_torsion(2 * cov.genus(), 2, Budget{}, [&](const TorsionVector& m) {
      // E = pushforward(R) x A, F x M = pushforward(R' x pullback(N)) x A'M
      // match when N = M A A'^-1 glues the classes together.
      LineClass n_line = LineClass::of_torsion(m).mul(pe->twist).mul(pf->twist.inv());
      TorsionClass shifted = cov.add(pf->r, cov.pullback(n_line.torsion));
      TorsionClass shifted_flip = cov.add(flipped, cov.pullback(n_line.torsion));
      if (pe->r == shifted || pe->r == shifted_flip) out.insert(m);
    });
    return {out.begin(), out.end()};
  }
  return {};
}

}  // namespace symstab
