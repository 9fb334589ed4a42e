#pragma once

#include <cctype>

#include <json.hpp>

#include "symstab/classifier.hpp"
#include "symstab/elm.hpp"
#include "symstab/surface.hpp"

namespace symstab {

using Json = nlohmann::ordered_json;

// ---- torsion vectors: arrays of "p/q" strings -----------------------------

inline Json torsion_to_json(const TorsionVector& v) {
  Json a = Json::array();
  for (const auto& x : v.c) a.push_back(x.str());
  return a;
}

inline TorsionVector torsion_from_json(const Json& j, int expected_rank = -1) {
  if (!j.is_array()) fail(Errc::Validation, "torsion vector must be a JSON array");
  TorsionVector v;
  for (const auto& item : j) {
    if (!item.is_string()) fail(Errc::Validation, "torsion coordinate must be a string 'p/q'");
    v.c.push_back(RatMod1::parse(item.get<std::string>()));
  }
  if (expected_rank >= 0 && v.rank() != expected_rank)
    fail(Errc::Validation, "torsion vector has rank " + std::to_string(v.rank()) + ", expected " +
                               std::to_string(expected_rank));
  return v;
}

inline TorsionVector torsion_from_csv(const std::string& csv) {
  TorsionVector v;
  std::string cur;
  for (char ch : csv) {
    if (ch == ',') {
      v.c.push_back(RatMod1::parse(cur));
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur += ch;
    }
  }
  if (!cur.empty()) v.c.push_back(RatMod1::parse(cur));
  if (v.c.empty()) fail(Errc::Validation, "empty torsion vector literal");
  return v;
}

// ---- covering models -------------------------------------------------------

inline Json covering_to_json(const Covering& cov) {
  Json j;
  j["genus"] = cov.genus();
  j["degree"] = cov.degree();
  j["ell"] = torsion_to_json(cov.ell());
  return j;
}

inline Covering covering_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("genus") || !j.contains("degree") || !j.contains("ell"))
    fail(Errc::Validation, "covering descriptor needs genus, degree, ell");
  int g = j.at("genus").get<int>();
  int m = j.at("degree").get<int>();
  TorsionVector ell = torsion_from_json(j.at("ell"));
  return make_cyclic_cover(g, ell, m);
}

// Torsion classes are always emitted in canonical form; the base part is in
// the user coordinates of the covering.
inline Json class_to_json(const Covering& cov, const TorsionClass& x) {
  Json j;
  j["base"] = torsion_to_json(cov.base_user(x));
  j["prym"] = torsion_to_json(x.prym());
  return j;
}

inline TorsionClass class_from_json(const Covering& cov, const Json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("prym"))
    fail(Errc::Validation, "torsion class needs base and prym parts");
  return cov.make_class(torsion_from_json(j.at("base"), 2 * cov.genus()),
                        torsion_from_json(j.at("prym"), cov.prym_rank()));
}

// ---- line classes ----------------------------------------------------------

inline Json line_to_json(const LineClass& l) {
  Json j;
  j["degree"] = l.degree;
  j["torsion"] = torsion_to_json(l.torsion);
  Json formal = Json::object();
  for (const auto& [name, exp] : l.formal) formal[name] = exp;
  j["formal"] = formal;
  return j;
}

inline LineClass line_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("torsion"))
    fail(Errc::Validation, "line class needs degree and torsion");
  LineClass l;
  l.degree = j.at("degree").get<i64>();
  l.torsion = torsion_from_json(j.at("torsion"));
  if (j.contains("formal")) {
    for (const auto& [name, exp] : j.at("formal").items()) {
      i64 e = exp.get<i64>();
      if (e != 0) l.formal[name] = e;
    }
  }
  return l;
}

// ---- bundle descriptors ----------------------------------------------------

inline Json bundle_to_json(const BundleDescriptor& e) {
  Json j;
  if (const auto* s = std::get_if<SplitBundle>(&e)) {
    j["split"] = line_to_json(s->line);
  } else if (const auto* p = std::get_if<PushforwardBundle>(&e)) {
    Json inner;
    inner["cov"] = covering_to_json(p->cov);
    inner["R"] = class_to_json(p->cov, p->r);
    inner["A"] = line_to_json(p->twist);
    j["pushforward"] = inner;
  } else {
    j["formal"] = std::get<FormalStableBundle>(e).tag;
  }
  return j;
}

inline BundleDescriptor bundle_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::InvalidDescriptor, "bundle descriptor must be a JSON object");
  if (j.contains("split")) return SplitBundle{line_from_json(j.at("split"))};
  if (j.contains("pushforward")) {
    const Json& inner = j.at("pushforward");
    if (!inner.contains("cov") || !inner.contains("R") || !inner.contains("A"))
      fail(Errc::InvalidDescriptor, "pushforward descriptor needs cov, R, A");
    Covering cov = covering_from_json(inner.at("cov"));
    TorsionClass r = class_from_json(cov, inner.at("R"));
    LineClass a = line_from_json(inner.at("A"));
    return make_pushforward(std::move(cov), std::move(r), std::move(a));
  }
  if (j.contains("formal")) return FormalStableBundle{j.at("formal").get<std::string>()};
  fail(Errc::InvalidDescriptor, "bundle descriptor needs one of: split, pushforward, formal");
}

inline Json sym2_presentation_to_json(const Sym2TripleCover& p) {
  Json inner;
  inner["cov"] = covering_to_json(p.cov);
  inner["M"] = class_to_json(p.cov, p.square_class);
  Json j;
  j["sym2_pushforward"] = inner;
  return j;
}

inline Sym2TripleCover sym2_presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("sym2_pushforward"))
    fail(Errc::MissingPresentation, "expected a sym2_pushforward presentation");
  const Json& inner = j.at("sym2_pushforward");
  if (!inner.contains("cov") || !inner.contains("M"))
    fail(Errc::MissingPresentation, "square presentation needs cov and M");
  Covering cov = covering_from_json(inner.at("cov"));
  TorsionClass m = class_from_json(cov, inner.at("M"));
  return Sym2TripleCover{std::move(cov), std::move(m)};
}

// ---- verdicts and reports ---------------------------------------------------

inline Json witness_to_json(const Witness& w) {
  Json j;
  j["kind"] = w.kind;
  Json lines = Json::array();
  for (const auto& l : w.lines) lines.push_back(line_to_json(l));
  j["lines"] = lines;
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

inline Json verdict_to_json(const StabilityVerdict& v) {
  Json j;
  j["status"] = stab_name(v.status);
  j["rule_tags"] = v.rule_tags;
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

inline Json s2_report_to_json(const S2Report& r) {
  Json j;
  j["bundle"] = verdict_to_json(r.bundle);
  j["sym_square"] = verdict_to_json(r.sym_square);
  return j;
}

inline Json minimal_k_to_json(const MinimalKReport& r) {
  Json j;
  if (r.sufficient_k)
    j["sufficient_k"] = *r.sufficient_k;
  else
    j["sufficient_k"] = nullptr;
  j["necessary_floor"] = r.necessary_floor;
  j["certificates"] = r.certificates;
  return j;
}

inline Json gate_to_json(const GateReport& r) {
  Json j;
  j["all_stable"] = r.all_stable;
  if (r.failing_power)
    j["failing_power"] = *r.failing_power;
  else
    j["failing_power"] = nullptr;
  j["case"] = r.case_tag;
  return j;
}

inline Json etale_to_json(const EtaleReport& r) {
  Json j;
  j["trivial"] = r.trivial;
  if (r.cover_degree)
    j["cover_degree"] = *r.cover_degree;
  else
    j["cover_degree"] = nullptr;
  j["rule"] = r.rule;
  return j;
}

inline Json count_to_json(const CountReport& r) {
  Json j;
  j["family"] = count_family_name(r.family);
  j["genus"] = r.genus;
  if (r.family == CountFamily::PrymJn || r.family == CountFamily::S2Locus2to1) j["n"] = r.n;
  if (r.value) j["value"] = *r.value;
  if (r.total) j["total"] = *r.total;
  if (r.fixed) j["fixed"] = *r.fixed;
  if (r.pairs) j["pairs"] = *r.pairs;
  if (r.raw) j["raw"] = *r.raw;
  if (r.paired) j["paired"] = *r.paired;
  if (r.a_choice_multiplicity) j["a_choice_multiplicity"] = *r.a_choice_multiplicity;
  j["identity_ok"] = r.identity_ok;
  return j;
}

inline std::map<int, Stab> statuses_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::Validation, "statuses must be a JSON object");
  std::map<int, Stab> out;
  for (const auto& [key, value] : j.items()) {
    int m = 0;
    try {
      m = std::stoi(key);
    } catch (const std::exception&) {
      fail(Errc::Validation, "status key '" + key + "' is not a power");
    }
    out[m] = stab_parse(value.get<std::string>());
  }
  return out;
}

// ---- elementary-transformation patterns and transcripts ---------------------

inline std::vector<ElmIncidence> pattern_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::Validation, "pattern must be a JSON array");
  std::vector<ElmIncidence> out;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("point") || !item.contains("fiber") ||
        !item.contains("incidence"))
      fail(Errc::Validation, "pattern entry needs point, fiber, incidence");
    ElmIncidence inc;
    inc.point = item.at("point").get<std::string>();
    inc.fiber = item.at("fiber").get<std::string>();
    for (const auto& [id, mu] : item.at("incidence").items()) inc.mu[id] = mu.get<int>();
    if (item.contains("iota_of")) inc.iota_of = item.at("iota_of").get<std::string>();
    out.push_back(std::move(inc));
  }
  return out;
}

inline Json curves_to_json(const ElmState& st) {
  Json j = Json::object();
  std::map<std::string, const TrackedCurve*> ordered;
  for (const auto& c : st.curves) ordered[c.id] = &c;
  for (const auto& [id, c] : ordered) {
    Json cj;
    cj["k"] = c->k;
    cj["b"] = c->b;
    cj["selfint"] = c->selfint;
    j[id] = cj;
  }
  return j;
}

inline Json incidence_to_json(const ElmIncidence& inc) {
  Json j;
  j["point"] = inc.point;
  j["fiber"] = inc.fiber;
  Json mu = Json::object();
  for (const auto& [id, m] : inc.mu) mu[id] = m;
  j["incidence"] = mu;
  if (inc.iota_of) j["iota_of"] = *inc.iota_of;
  return j;
}

inline Json generation_report_to_json(const TorsionVector& ell, const GenerationReport& rep) {
  Json j;
  j["genus"] = rep.state.genus;
  j["ell"] = torsion_to_json(ell);
  j["n"] = rep.n;
  Json initial;
  initial["e"] = 0;
  {
    ElmState start = init_decomposable(rep.state.genus, ell);
    initial["curves"] = curves_to_json(start);
    initial["c0_dot_bisection"] = rep.c0_dot_bisection;
    initial["c0_dot_fiber"] = rep.c0_dot_fiber;
  }
  j["initial"] = initial;
  Json steps = Json::array();
  for (std::size_t i = 0; i < rep.trail.size(); ++i) {
    Json s = incidence_to_json(rep.state.transcript[i]);
    s["e"] = rep.trail[i].e;
    s["curves"] = curves_to_json(rep.trail[i]);
    steps.push_back(s);
  }
  j["steps"] = steps;
  Json fin;
  fin["e"] = rep.state.e;
  fin["curves"] = curves_to_json(rep.state);
  Json checks;
  checks["bisection_selfint_zero"] = rep.bisection_zero;
  checks["section_selfint_is_2n"] = rep.section_matches_2n;
  checks["degree_is_minus_2n"] = rep.degree_matches;
  fin["checks"] = checks;
  Json det;
  det["degree"] = rep.determinant.degree;
  det["torsion"] = torsion_to_json(rep.determinant.torsion);
  det["twist_degree"] = rep.determinant.twist_degree;
  det["post_twist_degree"] = rep.determinant.post_twist_degree;
  fin["determinant"] = det;
  j["final"] = fin;
  return j;
}

inline Json split_run_report_to_json(const SplitRunReport& rep) {
  Json j;
  j["genus"] = rep.state.genus;
  j["n"] = rep.n;
  Json steps = Json::array();
  for (std::size_t i = 0; i < rep.trail.size(); ++i) {
    Json s = incidence_to_json(rep.state.transcript[i]);
    s["e"] = rep.trail[i].e;
    s["curves"] = curves_to_json(rep.trail[i]);
    steps.push_back(s);
  }
  j["steps"] = steps;
  Json degrees = Json::array();
  i64 lo = std::min(rep.degree_c0, rep.degree_cinf);
  i64 hi = std::max(rep.degree_c0, rep.degree_cinf);
  degrees.push_back(lo);
  degrees.push_back(hi);
  j["subbundle_degrees"] = degrees;
  Json per;
  per["C0"] = rep.degree_c0;
  per["Cinf"] = rep.degree_cinf;
  j["per_curve"] = per;
  j["twist_degree"] = rep.twist_degree;
  j["verdict_after_twist"] = split_stability_name(rep.verdict_after_twist);
  return j;
}

}  // namespace symstab
