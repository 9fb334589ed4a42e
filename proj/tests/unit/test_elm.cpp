#include <doctest.h>

#include <random>

#include "symstab/elm.hpp"

using namespace symstab;

namespace {

TorsionVector ell_g(int g) {
  TorsionVector v = TorsionVector::zero(2 * g);
  v.c[0] = RatMod1::make(1, 2);
  return v;
}

ElmIncidence on_bisection(const std::string& point, const std::string& fiber) {
  return ElmIncidence{point, fiber, {{"B", 1}}, std::nullopt};
}

std::vector<ElmIncidence> generic_pattern(int n) {
  std::vector<ElmIncidence> pat;
  for (int i = 0; i < 2 * n; ++i)
    pat.push_back(on_bisection("x" + std::to_string(i), "P" + std::to_string(i)));
  return pat;
}

}  // namespace

TEST_CASE("initial decomposable state") {
  ElmState st = init_decomposable(2, ell_g(2));
  REQUIRE(st.curves.size() == 3);
  for (const auto& c : st.curves) {
    CHECK(c.selfint == 0);
    CHECK(c.b == 0);
  }
  CHECK(st.find("B")->k == 2);
  CHECK(st.find("C0")->k == 1);
  CHECK(st.e == 0);
  CHECK_THROWS_AS(init_decomposable(2, TorsionVector::zero(4)), Error);
  TorsionVector quarter = TorsionVector::zero(4);
  quarter.c[0] = RatMod1::make(1, 4);
  CHECK_THROWS_AS(init_decomposable(2, quarter), Error);
}

TEST_CASE("single steps follow the +-1 rules for sections") {
  ElmState st = init_trivial_split(2);
  ElmState hit = elm_step(st, ElmIncidence{"x", "P", {{"C0", 1}}, std::nullopt});
  CHECK(hit.find("C0")->selfint == -1);
  CHECK(hit.find("Cinf")->selfint == 1);
  CHECK(hit.e == -1);
  ElmState miss = elm_step(st, ElmIncidence{"x", "P", {{"C0", 0}, {"Cinf", 0}}, std::nullopt});
  CHECK(miss.find("C0")->selfint == 1);
  CHECK(miss.find("Cinf")->selfint == 1);
}

TEST_CASE("random section steps preserve the numeric invariant") {
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> mu(0, 1);
  ElmState st = init_trivial_split(3);
  for (int i = 0; i < 100; ++i) {
    int m0 = mu(rng), m1 = mu(rng);
    ElmState next = elm_step(
        st, ElmIncidence{"p" + std::to_string(i), "F" + std::to_string(i),
                         {{"C0", m0}, {"Cinf", m1}}, std::nullopt});
    for (const auto& c : next.curves) {
      const TrackedCurve* prev = st.find(c.id);
      i64 m = c.id == "C0" ? m0 : m1;
      CHECK(c.selfint - prev->selfint == (m == 1 ? -1 : 1));
      CHECK(c.selfint == c.k * c.k * next.e + 2 * c.k * c.b);
    }
    CHECK(next.e == st.e - 1);
    st = next;
  }
}

TEST_CASE("bisection steps keep the invariant for k = 2") {
  ElmState st = init_decomposable(2, ell_g(2));
  ElmState next = elm_step(st, on_bisection("x1", "P1"));
  CHECK(next.find("B")->selfint == 0);  // -1 + 1
  const TrackedCurve* b = next.find("B");
  CHECK(b->selfint == 4 * next.e + 4 * b->b);
  // a multiplicity-2 center would drop the square by four
  ElmState tangent = elm_step(st, ElmIncidence{"x1", "P1", {{"B", 2}}, std::nullopt});
  CHECK(tangent.find("B")->selfint == -4);
  CHECK_THROWS_AS(elm_step(st, ElmIncidence{"x1", "P1", {{"C0", 2}}, std::nullopt}), Error);
}

TEST_CASE("a step and its complementary reverse cancel") {
  ElmState st = init_trivial_split(2);
  ElmState fwd = elm_step(st, ElmIncidence{"x", "P", {{"C0", 1}}, std::nullopt});
  ElmState back = elm_step(fwd, ElmIncidence{"y", "Q", {{"C0", 0}, {"Cinf", 1}}, std::nullopt});
  CHECK(back.find("C0")->selfint == 0);
  CHECK(back.e == -2);
}

TEST_CASE("distinct points in one fiber are rejected") {
  ElmState st = init_trivial_split(2);
  st = elm_step(st, ElmIncidence{"x", "P", {{"C0", 1}}, std::nullopt});
  CHECK_THROWS_AS(elm_step(st, ElmIncidence{"y", "P", {{"Cinf", 1}}, std::nullopt}), Error);
  // the same point again is an infinitely-near chain and is allowed
  CHECK_NOTHROW(elm_step(st, ElmIncidence{"x", "P", {{"C0", 1}}, std::nullopt}));
}

TEST_CASE("generation pipeline ends on the cone boundary") {
  std::mt19937 rng(53);
  for (int g = 2; g <= 5; ++g) {
    for (int n = 1; n <= 10; ++n) {
      GenerationReport rep = run_generation(g, ell_g(g), n, generic_pattern(n));
      CHECK(rep.bisection_zero);
      CHECK(rep.section_selfint == 2 * n);
      CHECK(rep.state.e == -2 * n);
      CHECK(rep.determinant.degree == -2 * n);
      CHECK(rep.determinant.twist_degree == n);
      CHECK(rep.determinant.post_twist_degree == 0);
      CHECK(rep.determinant.torsion == ell_g(g));
      CHECK(rep.c0_dot_bisection == 0);
      CHECK(rep.c0_dot_fiber == 1);
    }
  }
}

TEST_CASE("n = 0 generation leaves the split state unchanged") {
  GenerationReport rep = run_generation(2, ell_g(2), 0, {});
  CHECK(rep.state.e == 0);
  CHECK(rep.state.find("B")->selfint == 0);
  CHECK(rep.state.find("C0")->selfint == 0);
}

TEST_CASE("infinitely-near chains reproduce the distinct-point numbers") {
  int n = 2;
  std::vector<ElmIncidence> chain;
  for (int i = 0; i < 2 * n; ++i) chain.push_back(on_bisection("x0", "P0"));
  GenerationReport rep = run_generation(2, ell_g(2), n, chain);
  GenerationReport distinct = run_generation(2, ell_g(2), n, generic_pattern(n));
  CHECK(rep.bisection_selfint == distinct.bisection_selfint);
  CHECK(rep.section_selfint == distinct.section_selfint);
  CHECK(rep.state.e == distinct.state.e);
}

TEST_CASE("conjugate guard rejects deck pairs") {
  auto pat = generic_pattern(1);
  pat[1].iota_of = "x0";
  CHECK_THROWS_AS(run_generation(2, ell_g(2), 1, pat), Error);
  // partner declared first, used later
  auto pat2 = generic_pattern(2);
  pat2[0].iota_of = "x3";
  CHECK_THROWS_AS(run_generation(2, ell_g(2), 2, pat2), Error);
  // declaring a partner that never appears is fine
  auto pat3 = generic_pattern(1);
  pat3[0].iota_of = "never-used";
  CHECK_NOTHROW(run_generation(2, ell_g(2), 1, pat3));
}

TEST_CASE("generation validates the pattern shape") {
  CHECK_THROWS_AS(run_generation(2, ell_g(2), 1, generic_pattern(2)), Error);
  auto on_section = generic_pattern(1);
  on_section[0].mu["C0"] = 1;
  CHECK_THROWS_AS(run_generation(2, ell_g(2), 1, on_section), Error);
  auto tangent = generic_pattern(1);
  tangent[0].mu["B"] = 2;
  CHECK_THROWS_AS(run_generation(2, ell_g(2), 1, tangent), Error);
  auto off_bisection = generic_pattern(1);
  off_bisection[0].mu.erase("B");
  off_bisection[0].mu["C0"] = 0;
  CHECK_THROWS_AS(run_generation(2, ell_g(2), 1, off_bisection), Error);
}

TEST_CASE("balanced split runs produce opposite subbundle degrees") {
  for (int n = 0; n <= 5; ++n) {
    std::vector<ElmIncidence> pat;
    for (int i = 0; i < n; ++i)
      pat.push_back(ElmIncidence{"a" + std::to_string(i), "Pa" + std::to_string(i), {{"C0", 1}}, std::nullopt});
    for (int i = 0; i < n; ++i)
      pat.push_back(ElmIncidence{"b" + std::to_string(i), "Pb" + std::to_string(i), {{"Cinf", 1}}, std::nullopt});
    SplitRunReport rep = double_section_split_run(2, n, pat);
    CHECK(rep.degree_c0 == -n);
    CHECK(rep.degree_cinf == -n);
    CHECK(rep.verdict_after_twist == SplitStability::StrictlySemistable);
  }
}

TEST_CASE("asymmetric split run is unstable after the zero twist") {
  // both points on C0: the section through them keeps degree 0 while the
  // disjoint one drops to -2
  std::vector<ElmIncidence> pat;
  pat.push_back(ElmIncidence{"a0", "P0", {{"C0", 1}}, std::nullopt});
  pat.push_back(ElmIncidence{"a1", "P1", {{"C0", 1}}, std::nullopt});
  SplitRunReport rep = double_section_split_run(2, 1, pat);
  CHECK(rep.degree_c0 == 0);
  CHECK(rep.degree_cinf == -2);
  CHECK(rep.verdict_after_twist == SplitStability::Unstable);
}

TEST_CASE("split run rejects fibers shared across sections") {
  std::vector<ElmIncidence> pat;
  pat.push_back(ElmIncidence{"a", "P", {{"C0", 1}}, std::nullopt});
  pat.push_back(ElmIncidence{"b", "P", {{"Cinf", 1}}, std::nullopt});
  CHECK_THROWS_AS(double_section_split_run(2, 1, pat), Error);
  std::vector<ElmIncidence> both;
  both.push_back(ElmIncidence{"a", "P", {{"C0", 1}, {"Cinf", 1}}, std::nullopt});
  both.push_back(ElmIncidence{"b", "Q", {{"Cinf", 1}}, std::nullopt});
  CHECK_THROWS_AS(double_section_split_run(2, 1, both), Error);
}
