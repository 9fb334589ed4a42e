#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "symstab/torsion.hpp"

namespace symstab {

enum class PrymLocation { NotInPrym, Prym0, Prym1 };

inline const char* prym_location_name(PrymLocation p) {
  switch (p) {
    case PrymLocation::NotInPrym: return "not-in-prym";
    case PrymLocation::Prym0: return "prym0";
    case PrymLocation::Prym1: return "prym1";
  }
  return "?";
}

class Covering;

// Torsion point of the cover Jacobian in quotient presentation: a base-side
// part plus a Prym-block part, stored as the canonical (lexicographically
// minimal) representative of its gluing orbit.  Instances are produced by a
// Covering and are only meaningful relative to it.
class TorsionClass {
 public:
  TorsionClass() = default;

  const TorsionVector& base_aligned() const { return base_; }
  const TorsionVector& prym() const { return prym_; }
  bool is_zero() const { return base_.is_zero() && prym_.is_zero(); }

  bool operator==(const TorsionClass&) const = default;
  bool operator<(const TorsionClass& o) const {
    if (model_ != o.model_) return model_ < o.model_;
    if (base_ < o.base_) return true;
    if (o.base_ < base_) return false;
    return prym_ < o.prym_;
  }

 private:
  friend class Covering;
  std::uint64_t model_ = 0;
  TorsionVector base_;  // aligned coordinates
  TorsionVector prym_;
};

// Unramified cyclic m-cover pi: B -> C of a genus-g curve, encoded by an
// order-m torsion class ell on the base.  Torsion of the cover Jacobian is
// presented as pairs (base, prym) modulo the gluing subgroup
// K = {(d, psi(d)) : d in H}, in coordinates aligned so ell = (1/m, 0, ..., 0):
//
//   m = 2:  H = {a in J_2 : last coordinate 0},  psi(a) = (a_1, ..., a_{2g-2})
//   m = 3:  H = J_3,                             psi(a) = (a_1, ..., a_{2g-1})
//
// with psi read into the 2(m-1)(g-1) torsion coordinates of the Prym block.
// This choice makes ker(pullback) = <ell>, norm(base, prym) = m * base, and,
// for m = 2, splits ker(norm) into exactly two components.  A unimodular
// change of basis carries a general ell to the aligned form; all user-facing
// base vectors stay in the original coordinates.
class Covering {
 public:
  int genus() const { return genus_; }
  int degree() const { return degree_; }
  const TorsionVector& ell() const { return ell_; }
  int cover_genus() const { return cover_genus_; }
  int prym_rank() const { return prym_rank_; }
  std::uint64_t model_id() const { return model_; }

  bool same_model(const Covering& o) const { return model_ == o.model_; }

  TorsionClass make_class(const TorsionVector& base_user, const TorsionVector& prym) const {
    require_rank(base_user, 2 * genus_, "base part");
    require_rank(prym, prym_rank_, "prym part");
    return canonical(apply(to_aligned_, base_user), prym);
  }

  TorsionClass zero_class() const {
    return canonical(TorsionVector::zero(2 * genus_), TorsionVector::zero(prym_rank_));
  }

  // Base part of the canonical representative, mapped back to user coordinates.
  TorsionVector base_user(const TorsionClass& x) const {
    require_mine(x);
    return apply(from_aligned_, x.base_);
  }

  TorsionClass pullback(const TorsionVector& a) const {
    require_rank(a, 2 * genus_, "pullback argument");
    return canonical(apply(to_aligned_, a), TorsionVector::zero(prym_rank_));
  }

  TorsionVector norm(const TorsionClass& x) const {
    require_mine(x);
    return apply(from_aligned_, x.base_.scaled(degree_));
  }

  TorsionClass involution(const TorsionClass& x) const {
    require_double("involution");
    require_mine(x);
    return canonical(x.base_, -x.prym_);
  }

  bool in_pullback_image(const TorsionClass& x) const {
    require_mine(x);
    if (degree_ == 2) return x.prym_.scaled(2).is_zero();
    // degree 3: the glue map hits exactly the 3-torsion vectors supported on
    // the first 2g-1 Prym coordinates.
    int n = 2 * genus_;
    for (int j = 0; j < prym_rank_; ++j) {
      const RatMod1& p = x.prym_.c[static_cast<std::size_t>(j)];
      if (j < n - 1) {
        if (p.den != 1 && p.den != 3) return false;
      } else if (!p.is_zero()) {
        return false;
      }
    }
    return true;
  }

  PrymLocation prym_location(const TorsionClass& x) const {
    require_double("prym_location");
    require_mine(x);
    if (!x.base_.scaled(2).is_zero()) return PrymLocation::NotInPrym;
    return aligned_in_h(x.base_) ? PrymLocation::Prym0 : PrymLocation::Prym1;
  }

  TorsionVector pushforward_determinant(const TorsionClass& x) const {
    require_double("pushforward_determinant");
    return ell_ + norm(x);
  }

  TorsionClass add(const TorsionClass& x, const TorsionClass& y) const {
    require_mine(x);
    require_mine(y);
    return canonical(x.base_ + y.base_, x.prym_ + y.prym_);
  }

  TorsionClass scaled(const TorsionClass& x, i64 t) const {
    require_mine(x);
    return canonical(x.base_.scaled(t), x.prym_.scaled(t));
  }

  i64 class_order(const TorsionClass& x) const {
    require_mine(x);
    i64 bound = lcm_checked(x.base_.order(), x.prym_.order());
    for (i64 t = 1; t <= bound; ++t)
      if (bound % t == 0 && scaled(x, t).is_zero()) return t;
    return bound;
  }

  // All classes x with norm(x) = 0 and n*x = 0, enumerated exhaustively over
  // representatives and deduplicated through the canonical form.
  std::vector<TorsionClass> prym_torsion_classes(i64 n, const Budget& budget = {}) const {
    if (n < 1) fail(Errc::Validation, "torsion level must be positive");
    int n_base = 2 * genus_;
    std::uint64_t raw = torsion_count(n_base, degree_);
    std::uint64_t block = torsion_count(prym_rank_, degree_ * n);
    unsigned __int128 total = static_cast<unsigned __int128>(raw) * block;
    if (total > budget.limit)
      fail(Errc::BudgetExceeded, "prym torsion enumeration exceeds budget " +
                                     std::to_string(budget.limit));
    std::set<TorsionClass> out;
    Budget inner{budget.limit};
    for_each_torsion(n_base, degree_, inner, [&](const TorsionVector& a_aligned) {
      for_each_torsion(prym_rank_, degree_ * n, inner, [&](const TorsionVector& p) {
        TorsionClass x = canonical(a_aligned, p);
        if (scaled(x, n).is_zero()) out.insert(x);
      });
    });
    return {out.begin(), out.end()};
  }

  std::uint64_t prym_torsion_count(i64 n, const Budget& budget = {}) const {
    return prym_torsion_classes(n, budget).size();
  }

  // {pullback(a) : norm(pullback(a)) = 0}; equals the degree-torsion classes
  // of the Prym kernel as a set.
  std::vector<TorsionClass> prym_pullback_intersection(const Budget& budget = {}) const {
    std::set<TorsionClass> out;
    for_each_torsion(2 * genus_, degree_, budget,
                     [&](const TorsionVector& a) { out.insert(pullback(a)); });
    return {out.begin(), out.end()};
  }

  bool h_contains(const TorsionVector& a_user) const {
    require_rank(a_user, 2 * genus_, "subgroup membership argument");
    TorsionVector b = apply(to_aligned_, a_user);
    if (!b.scaled(degree_).is_zero()) return false;
    return aligned_in_h(b);
  }

  // The glue homomorphism on the subgroup H, in user coordinates.
  TorsionVector psi(const TorsionVector& a_user) const {
    if (!h_contains(a_user)) fail(Errc::Validation, "psi argument outside the glue subgroup");
    return psi_aligned(apply(to_aligned_, a_user));
  }

  std::vector<TorsionVector> h_basis() const {
    std::vector<TorsionVector> basis;
    int n = 2 * genus_;
    int span = degree_ == 2 ? n - 1 : n;
    for (int i = 0; i < span; ++i) {
      TorsionVector e = TorsionVector::zero(n);
      e.c[static_cast<std::size_t>(i)] = RatMod1::make(1, degree_);
      basis.push_back(apply(from_aligned_, e));
    }
    return basis;
  }

 private:
  friend Covering make_cyclic_cover(int genus, const TorsionVector& ell, int degree);

  Covering() = default;

  static void require_rank(const TorsionVector& v, int rank, const char* what) {
    if (v.rank() != rank)
      fail(Errc::Validation, std::string(what) + " has rank " + std::to_string(v.rank()) +
                                 ", expected " + std::to_string(rank));
  }

  void require_mine(const TorsionClass& x) const {
    if (x.model_ != model_) fail(Errc::Validation, "torsion class does not belong to this covering model");
  }

  void require_double(const char* op) const {
    if (degree_ != 2)
      fail(Errc::NotDoubleCover, std::string(op) + " is defined only for double covers");
  }

  bool aligned_in_h(const TorsionVector& b) const {
    if (degree_ == 2) return b.c.back().is_zero();
    return true;  // degree 3: H is the whole 3-torsion group
  }

  TorsionVector psi_aligned(const TorsionVector& delta) const {
    TorsionVector p = TorsionVector::zero(prym_rank_);
    int n = 2 * genus_;
    int span = degree_ == 2 ? n - 2 : n - 1;
    for (int j = 0; j < span; ++j)
      p.c[static_cast<std::size_t>(j)] = delta.c[static_cast<std::size_t>(j + 1)];
    return p;
  }

  static TorsionVector apply(const std::vector<std::vector<i64>>& m, const TorsionVector& v) {
    std::size_t n = m.size();
    TorsionVector out = TorsionVector::zero(static_cast<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      RatMod1 acc;
      for (std::size_t j = 0; j < n; ++j) acc = acc + v.c[j].scaled(m[i][j]);
      out.c[i] = acc;
    }
    return out;
  }

  TorsionClass canonical(const TorsionVector& base, const TorsionVector& prym) const {
    TorsionClass best;
    best.model_ = model_;
    best.base_ = base;
    best.prym_ = prym;
    for (const auto& [delta, psi_delta] : glue_) {
      TorsionVector b = base + delta;
      TorsionVector p = prym + psi_delta;
      if (b < best.base_ || (b == best.base_ && p < best.prym_)) {
        best.base_ = b;
        best.prym_ = p;
      }
    }
    return best;
  }

  int genus_ = 0;
  int degree_ = 0;
  TorsionVector ell_;
  int cover_genus_ = 0;
  int prym_rank_ = 0;
  std::uint64_t model_ = 0;
  std::vector<std::vector<i64>> to_aligned_;
  std::vector<std::vector<i64>> from_aligned_;
  std::vector<std::pair<TorsionVector, TorsionVector>> glue_;  // (delta, psi(delta))
};

namespace detail {

// Exact inverse of a small unimodular integer matrix; entries of the inverse
// must come out integral.
inline std::vector<std::vector<i64>> invert_unimodular(const std::vector<std::vector<i64>>& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat{m[i][j], 1};
    a[i][n + i] = Rat{1, 1};
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) fail(Errc::Validation, "singular matrix in basis change");
    std::swap(a[col], a[pivot]);
    Rat inv = Rat{1, 1} / a[col][col];
    for (std::size_t j = 0; j < 2 * n; ++j) a[col][j] = a[col][j] * inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      Rat f = a[row][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[row][j] = a[row][j] - f * a[col][j];
    }
  }
  std::vector<std::vector<i64>> out(n, std::vector<i64>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!a[i][n + j].is_integer()) fail(Errc::Validation, "basis change is not unimodular");
      out[i][j] = a[i][n + j].num;
    }
  return out;
}

}  // namespace detail

inline Covering make_cyclic_cover(int genus, const TorsionVector& ell, int degree) {
  if (degree != 2 && degree != 3)
    fail(Errc::UnsupportedDegree, "cyclic covers are modeled for degrees 2 and 3 only");
  if (genus < 2) fail(Errc::Validation, "base genus must be at least 2");
  int n = 2 * genus;
  if (ell.rank() != n) fail(Errc::Validation, "defining class must have rank 2g");
  if (ell.is_zero()) fail(Errc::TrivialClass, "nontrivial defining class required");
  if (ell.order() != degree) {
    if (degree == 2) fail(Errc::NotTwoTorsion, "defining class must have order exactly 2");
    fail(Errc::WrongTorsionOrder, "defining class must have order exactly " + std::to_string(degree));
  }

  // First column of the basis change is an integer lift of degree * ell with
  // a unit entry; completing by identity columns keeps it unimodular.
  std::vector<i64> c(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const RatMod1& x = ell.c[static_cast<std::size_t>(i)];
    i64 lift = x.num * (degree / x.den);  // numerator rescaled to denominator = degree
    c[static_cast<std::size_t>(i)] = (lift == 2 && degree == 3) ? -1 : lift;
  }
  int i0 = 0;
  while (c[static_cast<std::size_t>(i0)] == 0) ++i0;

  auto p = [&](int i) { return i == 0 ? i0 : (i == i0 ? 0 : i); };
  std::vector<std::vector<i64>> from(static_cast<std::size_t>(n), std::vector<i64>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) {
    from[static_cast<std::size_t>(i)][0] = c[static_cast<std::size_t>(i)];
    for (int j = 1; j < n; ++j)
      from[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (p(i) == j) ? 1 : 0;
  }

  Covering cov;
  cov.genus_ = genus;
  cov.degree_ = degree;
  cov.ell_ = ell;
  cov.cover_genus_ = degree * (genus - 1) + 1;
  cov.prym_rank_ = 2 * (degree - 1) * (genus - 1);
  cov.from_aligned_ = from;
  cov.to_aligned_ = detail::invert_unimodular(from);

  TorsionVector aligned_ell = TorsionVector::zero(n);
  aligned_ell.c[0] = RatMod1::make(1, degree);
  if (Covering::apply(cov.to_aligned_, ell) != aligned_ell)
    fail(Errc::Validation, "basis change failed to align the defining class");

  // Glue table: (delta, psi(delta)) over the whole subgroup H.
  if (degree == 2) {
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
      TorsionVector delta = TorsionVector::zero(n);
      for (int i = 0; i < n - 1; ++i)
        if (mask & (1ULL << i)) delta.c[static_cast<std::size_t>(i)] = RatMod1::make(1, 2);
      cov.glue_.emplace_back(delta, cov.psi_aligned(delta));
    }
  } else {
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    while (true) {
      TorsionVector delta = TorsionVector::zero(n);
      for (int i = 0; i < n; ++i)
        delta.c[static_cast<std::size_t>(i)] = RatMod1::make(t[static_cast<std::size_t>(i)], 3);
      cov.glue_.emplace_back(delta, cov.psi_aligned(delta));
      int pos = n - 1;
      while (pos >= 0) {
        if (++t[static_cast<std::size_t>(pos)] < 3) break;
        t[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }

  // Stable fingerprint over (genus, degree, ell) for cross-model validation.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(genus));
  mix(static_cast<std::uint64_t>(degree));
  for (const auto& x : ell.c) {
    mix(static_cast<std::uint64_t>(x.num));
    mix(static_cast<std::uint64_t>(x.den));
  }
  cov.model_ = h;
  return cov;
}

inline Covering make_double_cover(int genus, const TorsionVector& ell) {
  return make_cyclic_cover(genus, ell, 2);
}

// The basis-aligned double cover used by counting reports.
inline Covering canonical_double_cover(int genus) {
  TorsionVector ell = TorsionVector::zero(2 * genus);
  ell.c[0] = RatMod1::make(1, 2);
  return make_double_cover(genus, ell);
}

}  // namespace symstab
