#pragma once

// JSON forms of the library reports. Key order is fixed (ordered_json) so a
// report is byte-identical across reruns with the same seeds.

#include <string>
#include <vector>

#include "json.hpp"
#include "liftlab/liftlab.hpp"

namespace liftlab::report {

using Json = nlohmann::ordered_json;

inline Json subset_json(const VertexSubset& s) { return Json(s.members()); }

inline Json to_json(const Spectrum& s) { return Json(s.values); }

inline Json to_json(const ExperimentConfig& cfg) {
  return Json{{"graph", cfg.graph},         {"k", cfg.k},         {"trials", cfg.trials},
              {"seed", cfg.base_seed},      {"mode", to_string(cfg.mode)}, {"constants", cfg.constants}};
}

inline Json to_json(const TrialRecord& r) {
  Json j{{"trial", r.index}, {"seed", r.seed}, {"lambda_new", r.lambda_new}, {"top_new", r.top_new}};
  if (!r.root_radii.empty()) j["root_radii"] = r.root_radii;
  if (r.cross_check) j["cross_check"] = *r.cross_check;
  j["status"] = r.failed ? "failed" : "ok";
  if (r.failed) j["failure"] = r.failure;
  return j;
}

inline Json to_json(const ExperimentReport& rep) {
  Json fractions = Json::array();
  for (const auto& f : rep.fractions)
    fractions.push_back({{"c", f.c}, {"additive", f.additive}, {"multiplicative", f.multiplicative}});
  Json quantiles = Json::array();
  for (const auto& [p, v] : rep.quantiles) quantiles.push_back({{"p", p}, {"lambda_new", v}});
  Json trials = Json::array();
  for (const auto& r : rep.records) trials.push_back(to_json(r));
  return Json{{"config", to_json(rep.config)},
              {"base", {{"n", rep.n}, {"d", rep.d}, {"lambda", rep.lambda}, {"bipartite", rep.bipartite},
                        {"regime", rep.moderately_expanding ? "moderately-expanding" : "general"}}},
              {"failed", rep.failed},
              {"fractions", fractions},
              {"fraction_lambda_new_at_d", rep.fraction_at_degree},
              {"fraction_top_new_at_d", rep.fraction_top_new_at_d},
              {"quantiles", quantiles},
              {"min", rep.min},
              {"median", rep.median},
              {"max", rep.max},
              {"trials", trials}};
}

inline Json to_json(const CharacterizationReport& r) {
  Json roots = Json::array();
  for (std::size_t j = 0; j < r.per_root.size(); ++j)
    roots.push_back({{"j", j}, {"spectral_radius", spectral_radius(r.per_root[j])}, {"eigenvalues", to_json(r.per_root[j])}});
  return Json{{"n", r.n},
              {"k", r.k},
              {"passed", r.passed()},
              {"max_multiset_mismatch", r.max_multiset_mismatch},
              {"multiset_window", r.window},
              {"max_residual", r.max_residual},
              {"residual_tol", r.residual_tol},
              {"worst_residual_at", r.worst_residual_at},
              {"max_cross_inner_product", r.max_cross_inner_product},
              {"orthogonality_tol", r.orthogonality_tol},
              {"worst_inner_product_at", r.worst_inner_product_at},
              {"lambda_new_from_roots", r.lambda_new_from_roots()},
              {"roots", roots},
              {"pooled", to_json(r.pooled)},
              {"lift", to_json(r.lift)}};
}

inline Json to_json(const ExpansionReport& r) {
  return Json{{"method", to_string(r.method)},
              {"h", r.h},
              {"boundary", r.boundary},
              {"argmin", subset_json(r.argmin)},
              {"lambda2", r.lambda2},
              {"cheeger_lower", r.cheeger_lower},
              {"cheeger_upper", r.cheeger_upper}};
}

inline Json to_json(const CheegerResult& r) {
  Json j = to_json(r.report);
  j["lower_holds"] = r.lower_holds;
  j["upper_holds"] = r.upper_holds;
  j["passed"] = r.passed();
  return j;
}

inline Json to_json(const EmlReport& r) {
  return Json{{"method", to_string(r.method)},   {"lambda", r.lambda},
              {"max_ratio", r.max_ratio},         {"passed", r.passed()},
              {"pairs_checked", r.pairs_checked}, {"worst_s", subset_json(r.worst_s)},
              {"worst_t", subset_json(r.worst_t)}};
}

inline Json to_json(const ConverseEmlReport& r) {
  return Json{{"alpha", r.alpha}, {"lambda", r.lambda}, {"alpha_log_term", r.alpha_log_term}};
}

inline Json to_json(const LemmaCheckReport& r) {
  Json j{{"lemma", to_string(r.which)}, {"n", r.n},           {"d", r.d},
         {"lambda", r.lambda},          {"seed", r.seed},     {"trials", r.trials},
         {"applicable", r.applicable}};
  if (!r.applicable) j["reason"] = r.reason;
  j["admissible_shapes"] = r.admissible_shapes;
  j["violations"] = r.violations;
  j["max_ratio"] = r.max_ratio;
  return j;
}

inline Json to_json(const SignSumMoments& m) {
  return Json{{"samples", m.samples},
              {"mean", m.mean},
              {"stddev", m.stddev},
              {"standard_error", m.standard_error},
              {"exact_variance", m.exact_variance},
              {"mean_within_3_sigma", m.mean_within(3.0)}};
}

inline Json to_json(const SigningSearchResult& r) {
  return Json{{"min_spectral_radius", r.min_radius},
              {"ramanujan_bound", r.ramanujan_bound},
              {"within_bound", r.within_bound},
              {"signings_evaluated", r.signings_evaluated},
              {"best_signing", r.best.signs()}};
}

inline Json to_json(const GrowthTrajectory& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"level", s.level},
                     {"n", s.n},
                     {"lambda", s.lambda},
                     {"lambda_new", s.lambda_new},
                     {"samples", s.samples},
                     {"exhaustive", s.exhaustive}});
  Json j{{"truncated", t.truncated}, {"steps", steps}};
  if (t.truncated) j["truncation_reason"] = t.truncation_reason;
  return j;
}

}  // namespace liftlab::report
