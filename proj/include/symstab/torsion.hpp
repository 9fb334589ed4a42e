#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "symstab/rational.hpp"

namespace symstab {

// Element of (Q/Z)^rank with every coordinate in canonical form.
struct TorsionVector {
  std::vector<RatMod1> c;

  static TorsionVector zero(int rank) {
    TorsionVector v;
    v.c.assign(static_cast<std::size_t>(rank), RatMod1{});
    return v;
  }

  int rank() const { return static_cast<int>(c.size()); }

  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }

  TorsionVector operator+(const TorsionVector& o) const {
    require_same_rank(o);
    TorsionVector r;
    r.c.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r.c.push_back(c[i] + o.c[i]);
    return r;
  }

  TorsionVector operator-(const TorsionVector& o) const {
    require_same_rank(o);
    TorsionVector r;
    r.c.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r.c.push_back(c[i] - o.c[i]);
    return r;
  }

  TorsionVector operator-() const {
    TorsionVector r;
    r.c.reserve(c.size());
    for (const auto& x : c) r.c.push_back(-x);
    return r;
  }

  TorsionVector scaled(i64 t) const {
    TorsionVector r;
    r.c.reserve(c.size());
    for (const auto& x : c) r.c.push_back(x.scaled(t));
    return r;
  }

  // Least n >= 1 with n * v = 0, i.e. the lcm of coordinate denominators.
  i64 order() const {
    i64 l = 1;
    for (const auto& x : c) l = lcm_checked(l, x.den);
    return l;
  }

  bool operator==(const TorsionVector&) const = default;

  // Value-lexicographic; shorter vectors sort first so heterogeneous ranks
  // still order deterministically inside a set.
  bool operator<(const TorsionVector& o) const {
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (std::size_t i = 0; i < c.size(); ++i) {
      auto cmp = c[i] <=> o.c[i];
      if (cmp != 0) return cmp < 0;
    }
    return false;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += c[i].str();
    }
    return s + ")";
  }

 private:
  void require_same_rank(const TorsionVector& o) const {
    if (c.size() != o.c.size()) fail(Errc::Validation, "torsion vector rank mismatch");
  }
};

struct Budget {
  std::uint64_t limit = 10'000'000ULL;
};

// n^rank, the size of the n-torsion subgroup of (Q/Z)^rank.
inline std::uint64_t torsion_count(int rank, i64 n) {
  if (rank < 0) fail(Errc::Validation, "negative rank");
  if (n < 1) fail(Errc::Validation, "torsion level must be positive");
  unsigned __int128 acc = 1;
  for (int i = 0; i < rank; ++i) {
    acc *= static_cast<unsigned __int128>(n);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      fail(Errc::Overflow, "torsion count exceeds 64-bit range");
  }
  return static_cast<std::uint64_t>(acc);
}

// Visits every n-torsion vector of the given rank exactly once, in
// lexicographic order of coordinate values (first coordinate most
// significant).
template <class Fn>
void for_each_torsion(int rank, i64 n, const Budget& budget, Fn&& fn) {
  std::uint64_t count = torsion_count(rank, n);
  if (count > budget.limit)
    fail(Errc::BudgetExceeded, "enumeration of " + std::to_string(count) +
                                   " elements exceeds budget " + std::to_string(budget.limit));
  std::vector<i64> idx(static_cast<std::size_t>(rank), 0);
  while (true) {
    TorsionVector v;
    v.c.reserve(idx.size());
    for (i64 j : idx) v.c.push_back(RatMod1::make(j, n));
    fn(v);
    int pos = rank - 1;
    while (pos >= 0) {
      if (++idx[static_cast<std::size_t>(pos)] < n) break;
      idx[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

inline std::vector<TorsionVector> enumerate_torsion(int rank, i64 n, const Budget& budget = {}) {
  std::vector<TorsionVector> out;
  out.reserve(static_cast<std::size_t>(torsion_count(rank, n)));
  for_each_torsion(rank, n, budget, [&](const TorsionVector& v) { out.push_back(v); });
  return out;
}

// Exhaustive closure of the subgroup generated by gens; the group is finite
// because every generator is torsion.
inline std::set<TorsionVector> subgroup_closure(const std::vector<TorsionVector>& gens, int rank) {
  for (const auto& g : gens)
    if (g.rank() != rank) fail(Errc::Validation, "generator rank mismatch");
  std::set<TorsionVector> group;
  group.insert(TorsionVector::zero(rank));
  std::vector<TorsionVector> frontier(group.begin(), group.end());
  while (!frontier.empty()) {
    std::vector<TorsionVector> next;
    for (const auto& w : frontier) {
      for (const auto& g : gens) {
        TorsionVector s = w + g;
        if (group.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return group;
}

inline bool subgroup_membership(const TorsionVector& v, const std::vector<TorsionVector>& gens) {
  auto group = subgroup_closure(gens, v.rank());
  return group.count(v) > 0;
}

}  // namespace symstab
