// symstab: exact-arithmetic toolkit for rank-2 bundles with trivial
// determinant whose symmetric powers drop stability.  All subcommands emit a
// single JSON report on stdout; nothing is printed until the report is
// complete.  Exit codes: 0 ok, 2 validation error, 3 enumeration budget
// exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "symstab/symstab.hpp"

namespace {

using namespace symstab;

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Validation, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& ex) {
    fail(Errc::Validation, "malformed JSON in '" + path + "': " + ex.what());
  }
  return j;
}

Budget resolve_budget(std::optional<std::uint64_t> flag) {
  if (flag) return Budget{*flag};
  if (const char* env = std::getenv("SYMSTAB_BUDGET")) {
    try {
      return Budget{std::stoull(env)};
    } catch (const std::exception&) {
      fail(Errc::Validation, "SYMSTAB_BUDGET is not a number");
    }
  }
  return Budget{};
}

void print(const Json& report) { std::cout << report.dump(2) << "\n"; }

Json classify_bundle(const BundleDescriptor& e, int k, const Budget&) {
  Json out;
  out["input"] = bundle_to_json(e);
  if (k == 0) {
    out["s2"] = s2_report_to_json(s2_status(e));
    out["s3_line"] = verdict_to_json(s3_line_subbundle_status(e));
    out["s3_rank2"] = verdict_to_json(s3_rank2_status(S3Rank2Input{e}));
    if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
      if (!p->cov.in_pullback_image(p->r))
        out["minimal_k"] = minimal_k_to_json(minimal_line_destabilized_k(*p));
    }
    if (!std::holds_alternative<FormalStableBundle>(e))
      out["etale"] = etale_to_json(etale_trivial(e));
    return out;
  }
  out["k"] = k;
  if (k == 2) {
    out["s2"] = s2_report_to_json(s2_status(e));
    return out;
  }
  if (k == 3) {
    out["s3_line"] = verdict_to_json(s3_line_subbundle_status(e));
    out["s3_rank2"] = verdict_to_json(s3_rank2_status(S3Rank2Input{e}));
    out["status"] = verdict_to_json(sym_power_status(e, 3));
    return out;
  }
  out["status"] = verdict_to_json(sym_power_status(e, k));
  if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
    if (!p->cov.in_pullback_image(p->r))
      out["minimal_k"] = minimal_k_to_json(minimal_line_destabilized_k(*p));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"exact stability bookkeeping for symmetric powers of rank-2 bundles"};
  app.require_subcommand(1);
  app.fallthrough();  // let the global --budget appear after a subcommand
  std::optional<std::uint64_t> budget_flag;
  app.add_option("--budget", budget_flag, "enumeration budget (default 10^7; env SYMSTAB_BUDGET)");

  // classify
  auto* classify = app.add_subcommand("classify", "stability verdicts for a bundle descriptor");
  std::string bundle_path;
  int classify_k = 0;
  classify->add_option("--bundle", bundle_path, "descriptor or square-presentation JSON file")
      ->required();
  classify->add_option("--k", classify_k, "symmetric power (default: full report)");

  // count
  auto* count = app.add_subcommand("count", "torsion-level counts of the exceptional families");
  int count_genus = 2;
  std::string family;
  i64 count_n = 0;
  count->add_option("--genus", count_genus, "base genus")->required();
  count->add_option("--family", family, "double-covers | prym-jn | s2-locus-2to1 | s3-line")
      ->required();
  count->add_option("--n", count_n, "torsion level for prym-jn / s2-locus-2to1");

  // gate
  auto* gate = app.add_subcommand("gate", "all-powers gate from low-power statuses");
  std::string statuses_path;
  gate->add_option("--statuses", statuses_path, "JSON map of power -> status")->required();

  // prym
  auto* prym = app.add_subcommand("prym", "torsion counts in the kernel of the norm");
  int prym_genus = 2;
  std::string prym_ell;
  i64 prym_n = 2;
  prym->add_option("--genus", prym_genus, "base genus")->required();
  prym->add_option("--ell", prym_ell, "defining class, comma-separated rationals (default aligned)");
  prym->add_option("--n", prym_n, "torsion level");

  // covering
  auto* covering = app.add_subcommand("covering", "model data of an unramified cyclic cover");
  int cov_genus = 2;
  int cov_degree = 2;
  std::string cov_ell;
  covering->add_option("--genus", cov_genus, "base genus")->required();
  covering->add_option("--ell", cov_ell, "defining class, comma-separated rationals")->required();
  covering->add_option("--degree", cov_degree, "cover degree (2 or 3)");

  // surf
  auto* surf = app.add_subcommand("surf", "ruled-surface intersection numbers");
  surf->require_subcommand(1);
  i64 surf_e = 0, surf_k = 1, surf_b = 0, surf_s1 = 0, surf_b1 = 0, surf_s2 = 0, surf_b2 = 0;
  int surf_g = 2;
  auto* surf_int = surf->add_subcommand("intersect", "pairing of two numerical classes");
  surf_int->add_option("--e", surf_e, "C1^2");
  surf_int->add_option("--g", surf_g, "base genus");
  surf_int->add_option("--s1", surf_s1)->required();
  surf_int->add_option("--b1", surf_b1)->required();
  surf_int->add_option("--s2", surf_s2)->required();
  surf_int->add_option("--b2", surf_b2)->required();
  auto* surf_self = surf->add_subcommand("selfint", "self-intersection of kC1 + bf");
  surf_self->add_option("--e", surf_e, "C1^2");
  surf_self->add_option("--g", surf_g, "base genus");
  surf_self->add_option("--k", surf_k)->required();
  surf_self->add_option("--b", surf_b)->required();
  auto* surf_genus = surf->add_subcommand("genus", "genus of a smooth k-section");
  surf_genus->add_option("--g", surf_g)->required();
  surf_genus->add_option("--k", surf_k)->required();

  // elm
  auto* elm = app.add_subcommand("elm", "elementary-transformation simulator");
  elm->require_subcommand(1);
  int elm_genus = 2;
  std::string elm_ell, pattern_path;
  auto* elm_run = elm->add_subcommand("run", "orthogonal-bundle generation pipeline");
  elm_run->add_option("--genus", elm_genus, "base genus")->required();
  elm_run->add_option("--ell", elm_ell, "two-torsion class, comma-separated rationals")->required();
  elm_run->add_option("--pattern", pattern_path, "JSON pattern file (2n entries)")->required();
  auto* elm_split = elm->add_subcommand("split-run", "transformations of the trivial split surface");
  elm_split->add_option("--genus", elm_genus, "base genus")->required();
  elm_split->add_option("--pattern", pattern_path, "JSON pattern file (2n entries)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    Json err;
    err["error"] = Json{{"code", "Validation"}, {"message", e.what()}};
    print(err);
    return 2;
  }

  Budget budget = resolve_budget(budget_flag);

  if (classify->parsed()) {
    Json input = load_json(bundle_path);
    if (input.contains("sym2_pushforward")) {
      Sym2TripleCover pres = sym2_presentation_from_json(input);
      if (classify_k != 0 && classify_k != 3)
        fail(Errc::Validation, "square presentations classify the cube only (--k 3)");
      Json out;
      out["input"] = sym2_presentation_to_json(pres);
      out["k"] = 3;
      out["rank2"] = verdict_to_json(s3_rank2_status(S3Rank2Input{pres}));
      print(out);
      return 0;
    }
    print(classify_bundle(bundle_from_json(input), classify_k, budget));
    return 0;
  }

  if (count->parsed()) {
    CountFamily fam;
    if (family == "double-covers")
      fam = CountFamily::DoubleCovers;
    else if (family == "prym-jn")
      fam = CountFamily::PrymJn;
    else if (family == "s2-locus-2to1")
      fam = CountFamily::S2Locus2to1;
    else if (family == "s3-line")
      fam = CountFamily::S3LineWitness;
    else
      fail(Errc::Validation, "unknown family '" + family + "'");
    print(count_to_json(count_exceptional(count_genus, fam, count_n, budget)));
    return 0;
  }

  if (gate->parsed()) {
    print(gate_to_json(higher_gate(statuses_from_json(load_json(statuses_path)))));
    return 0;
  }

  if (prym->parsed()) {
    Covering cov = prym_ell.empty() ? canonical_double_cover(prym_genus)
                                    : make_double_cover(prym_genus, torsion_from_csv(prym_ell));
    auto classes = cov.prym_torsion_classes(prym_n, budget);
    i64 prym0 = 0, prym1 = 0;
    for (const auto& x : classes) {
      PrymLocation loc = cov.prym_location(x);
      if (loc == PrymLocation::Prym0) ++prym0;
      if (loc == PrymLocation::Prym1) ++prym1;
    }
    Json out;
    out["genus"] = cov.genus();
    out["ell"] = torsion_to_json(cov.ell());
    out["n"] = prym_n;
    out["count"] = classes.size();
    out["prym0"] = prym0;
    out["prym1"] = prym1;
    out["pullback_intersection_size"] = cov.prym_pullback_intersection(budget).size();
    print(out);
    return 0;
  }

  if (covering->parsed()) {
    Covering cov = make_cyclic_cover(cov_genus, torsion_from_csv(cov_ell), cov_degree);
    Json out;
    out["covering"] = covering_to_json(cov);
    out["cover_genus"] = cov.cover_genus();
    out["prym_rank"] = cov.prym_rank();
    Json basis = Json::array();
    for (const auto& v : cov.h_basis()) basis.push_back(torsion_to_json(v));
    out["h_basis"] = basis;
    print(out);
    return 0;
  }

  if (surf->parsed()) {
    Json out;
    if (surf_int->parsed()) {
      SurfaceContext ctx{surf_g, surf_e};
      out["e"] = surf_e;
      out["d1"] = Json{{"s", surf_s1}, {"b", surf_b1}};
      out["d2"] = Json{{"s", surf_s2}, {"b", surf_b2}};
      out["product"] = intersect(ctx, NumClass{surf_s1, surf_b1}, NumClass{surf_s2, surf_b2});
    } else if (surf_self->parsed()) {
      SurfaceContext ctx{surf_g, surf_e};
      out["e"] = surf_e;
      out["k"] = surf_k;
      out["b"] = surf_b;
      out["selfint"] = self_intersection(ctx, NumClass{surf_k, surf_b});
      if (surf_e == 0) out["cone_boundary"] = ksection_zero_selfint_condition(ctx, surf_k, surf_b);
    } else {
      out["g"] = surf_g;
      out["k"] = surf_k;
      out["genus"] = ksection_genus(surf_g, surf_k);
    }
    print(out);
    return 0;
  }

  if (elm->parsed()) {
    auto pattern = pattern_from_json(load_json(pattern_path));
    if (pattern.size() % 2 != 0)
      fail(Errc::InvalidPattern, "pattern must contain an even number of entries");
    int n = static_cast<int>(pattern.size() / 2);
    if (elm_run->parsed()) {
      TorsionVector ell = torsion_from_csv(elm_ell);
      print(generation_report_to_json(ell, run_generation(elm_genus, ell, n, pattern)));
    } else {
      print(split_run_report_to_json(double_section_split_run(elm_genus, n, pattern)));
    }
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    Json err;
    err["error"] = Json{{"code", e.code_name()}, {"message", e.what()}};
    print(err);
    return e.code() == Errc::BudgetExceeded ? 3 : 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = Json{{"code", "Internal"}, {"message", e.what()}};
    print(err);
    return 1;
  }
}
