#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "symstab/covering.hpp"

namespace symstab {

// Line bundle class: an integer degree, a torsion part in (Q/Z)^2g, and a
// free multiplicative part on opaque generator symbols for degree-0 classes
// that are not torsion.  Formal symbols never collapse against torsion data.
struct LineClass {
  i64 degree = 0;
  TorsionVector torsion;
  std::map<std::string, i64> formal;

  static LineClass trivial(int rank) { return LineClass{0, TorsionVector::zero(rank), {}}; }
  static LineClass of_torsion(TorsionVector t) { return LineClass{0, std::move(t), {}}; }
  static LineClass generator(int rank, const std::string& name, i64 exp = 1, i64 deg = 0) {
    LineClass l{deg, TorsionVector::zero(rank), {}};
    if (exp != 0) l.formal[name] = exp;
    return l;
  }

  LineClass mul(const LineClass& o) const {
    LineClass r{degree + o.degree, torsion + o.torsion, formal};
    for (const auto& [name, exp] : o.formal) {
      i64 e = (r.formal.count(name) ? r.formal[name] : 0) + exp;
      if (e == 0)
        r.formal.erase(name);
      else
        r.formal[name] = e;
    }
    return r;
  }

  LineClass inv() const {
    LineClass r{-degree, -torsion, {}};
    for (const auto& [name, exp] : formal) r.formal[name] = -exp;
    return r;
  }

  LineClass pow(i64 k) const {
    LineClass r{degree * k, torsion.scaled(k), {}};
    if (k != 0)
      for (const auto& [name, exp] : formal) r.formal[name] = exp * k;
    return r;
  }

  bool is_torsion() const { return degree == 0 && formal.empty(); }
  bool is_trivial() const { return is_torsion() && torsion.is_zero(); }

  i64 order() const {
    if (!is_torsion())
      fail(Errc::NotTorsion, "order is defined only for torsion line classes");
    return torsion.order();
  }

  bool operator==(const LineClass&) const = default;
  bool operator<(const LineClass& o) const {
    if (degree != o.degree) return degree < o.degree;
    if (torsion < o.torsion) return true;
    if (o.torsion < torsion) return false;
    return formal < o.formal;
  }
};

// Multiset of line classes; the decomposition type of a direct sum of lines.
struct SymDecomp {
  std::map<LineClass, i64> parts;

  void add(const LineClass& l, i64 mult = 1) {
    if (mult <= 0) fail(Errc::Validation, "nonpositive multiplicity");
    parts[l] += mult;
  }

  i64 rank() const {
    i64 r = 0;
    for (const auto& [l, m] : parts) r += m;
    return r;
  }

  i64 degree() const {
    i64 d = 0;
    for (const auto& [l, m] : parts) d += l.degree * m;
    return d;
  }

  SymDecomp twisted(const LineClass& n) const {
    SymDecomp r;
    for (const auto& [l, m] : parts) r.add(l.mul(n), m);
    return r;
  }

  bool operator==(const SymDecomp&) const = default;
};

// S^k(A + B) = {A^i B^(k-i)} as a multiset.
inline SymDecomp sym_power_pair(const LineClass& a, const LineClass& b, i64 k) {
  if (k < 0) fail(Errc::Validation, "negative symmetric power");
  SymDecomp d;
  for (i64 i = 0; i <= k; ++i) d.add(a.pow(i).mul(b.pow(k - i)));
  return d;
}

// S^k(L^-1 + L) = {L^(k-2i)}.
inline SymDecomp sym_power_split(const LineClass& l, i64 k) {
  return sym_power_pair(l.inv(), l, k);
}

inline Rat slope(i64 rank, i64 degree) {
  if (rank < 1) fail(Errc::Validation, "slope needs positive rank");
  return Rat::make(degree, rank);
}

enum class SplitStability { Stable, StrictlySemistable, Unstable };

inline const char* split_stability_name(SplitStability s) {
  switch (s) {
    case SplitStability::Stable: return "stable";
    case SplitStability::StrictlySemistable: return "strictly-semistable";
    case SplitStability::Unstable: return "unstable";
  }
  return "?";
}

// A decomposable bundle of rank >= 2 is never stable: it is strictly
// semistable when every summand matches the total slope and unstable as soon
// as one summand sits above it.  Rank 1 is stable by convention.
inline SplitStability split_stability(const SymDecomp& d) {
  i64 rank = d.rank();
  if (rank == 0) fail(Errc::Validation, "empty decomposition");
  if (rank == 1) return SplitStability::Stable;
  Rat total = slope(rank, d.degree());
  for (const auto& [l, m] : d.parts)
    if (slope(1, l.degree) != total) return SplitStability::Unstable;
  return SplitStability::StrictlySemistable;
}

// Rank-2 descriptors with trivial determinant.
struct SplitBundle {
  LineClass line;  // E = line^-1 + line
};

struct PushforwardBundle {
  Covering cov;       // double cover
  TorsionClass r;     // class in the Prym kernel
  LineClass twist;    // A with A^2 = ell, so det(pushforward(r) x A) is trivial
};

struct FormalStableBundle {
  std::string tag;  // postulated stable with stable square; gate input only
};

using BundleDescriptor = std::variant<SplitBundle, PushforwardBundle, FormalStableBundle>;

inline PushforwardBundle make_pushforward(Covering cov, TorsionClass r, LineClass twist) {
  if (cov.degree() != 2)
    fail(Errc::InvalidDescriptor, "pushforward descriptors require a double cover");
  if (!cov.norm(r).is_zero())
    fail(Errc::InvalidDescriptor, "pushforward class must lie in the Prym kernel");
  if (!twist.is_torsion())
    fail(Errc::InvalidDescriptor, "twist must be a torsion line class");
  if (twist.torsion.scaled(2) != cov.ell())
    fail(Errc::InvalidDescriptor, "twist must square to the defining class of the cover");
  return PushforwardBundle{std::move(cov), std::move(r), std::move(twist)};
}

// Rank bookkeeping for E x E = O + S2 E; for split input both sides expand to
// explicit multisets and are compared literally.
struct TensorSquareRecord {
  i64 rank_left = 4;
  i64 rank_right = 4;  // 1 + 3
  bool rank_ok = true;
  bool det_ok = true;
  std::optional<SymDecomp> lhs;
  std::optional<SymDecomp> rhs;
  bool multiset_ok = true;
};

inline TensorSquareRecord tensor_square_split(const BundleDescriptor& e) {
  TensorSquareRecord rec;
  rec.rank_ok = (rec.rank_left == 1 + 3);
  if (const auto* s = std::get_if<SplitBundle>(&e)) {
    const LineClass& l = s->line;
    // (L^-1 + L) x (L^-1 + L) = L^-2 + O + O + L^2
    SymDecomp lhs;
    lhs.add(l.pow(-2));
    lhs.add(l.pow(0), 2);
    lhs.add(l.pow(2));
    SymDecomp rhs = sym_power_split(l, 2);
    rhs.add(l.pow(0));
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.multiset_ok = (lhs == rhs);
    rec.det_ok = lhs.degree() == 0 && rhs.degree() == 0;
  }
  return rec;
}

// Rank and degree rows of the symmetric-power product filtration
// S^(n-1) x S^(m-1) -> S^n x S^m -> S^(n+m): nm + (n+m+1) = (n+1)(m+1).
struct SymSequenceRecord {
  i64 n = 0, m = 0;
  i64 rank_sub = 0, rank_quot = 0, rank_total = 0;
  bool rank_ok = false;
  bool degree_ok = true;  // all rows have degree 0 for trivial determinant
};

inline SymSequenceRecord sym_sequence_bookkeeping(i64 n, i64 m) {
  if (n < 1 || m < 1) fail(Errc::Validation, "symmetric sequence needs n, m >= 1");
  SymSequenceRecord r;
  r.n = n;
  r.m = m;
  r.rank_sub = n * m;
  r.rank_quot = n + m + 1;
  r.rank_total = (n + 1) * (m + 1);
  r.rank_ok = (r.rank_sub + r.rank_quot == r.rank_total);
  return r;
}

// Values of the symmetric bilinear form each descriptor is orthogonal for:
// the trivial class for split data, the defining two-torsion class for
// pushforward data, nothing for formal placeholders.
inline std::set<LineClass> orthogonality_values(const BundleDescriptor& e) {
  std::set<LineClass> out;
  if (const auto* s = std::get_if<SplitBundle>(&e)) {
    out.insert(LineClass::trivial(s->line.torsion.rank()));
  } else if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
    out.insert(LineClass::of_torsion(p->cov.ell()));
  }
  return out;
}

}  // namespace symstab
