#include "satotate/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace satotate {

using nlohmann::json;

double round_sig(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

json to_json(std::complex<double> z) { return {{"re", round_sig(z.real())}, {"im", round_sig(z.imag())}}; }

json to_json(const EquidistReport& r) {
  json chars = json::array();
  for (const auto& c : r.per_character) {
    chars.push_back({{"label", c.label},
                     {"empirical_average", to_json(c.empirical_average)},
                     {"haar_integral", to_json(c.haar_integral)},
                     {"threshold", round_sig(c.threshold)},
                     {"pass", c.pass}});
  }
  json j = {{"schema", kSchemaVersion},
            {"test", r.test},
            {"model", r.model},
            {"n_samples", r.n_samples},
            {"char_cap", r.char_cap},
            {"z", round_sig(r.z)},
            {"characters", chars},
            {"verdict", to_string(r.verdict)}};
  j["k_ratio"] = r.k_ratio ? json(round_sig(*r.k_ratio)) : json(nullptr);
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

json to_json(const CyclicReductionResult& r) {
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back({{"subgroup", l.subgroup}, {"report", to_json(l.report)}});
  return {{"levels", levels}, {"verdict", to_string(r.verdict)}};
}

json to_json(const ParityVerdict& v) {
  return {{"order", v.order}, {"criterion_used", to_string(v.criterion_used)}, {"minus_id_in_tilde", v.minus_id_in_tilde}};
}

json to_json(const ObstructionResult& r) {
  return {{"sign_average", round_sig(r.sign_average)},
          {"haar_value", round_sig(r.haar_value)},
          {"threshold", round_sig(r.threshold)},
          {"n_samples", r.n_samples},
          {"obstructed", r.obstructed},
          {"parity_order", r.parity_order},
          {"statements_equivalent", r.statements_equivalent}};
}

json to_json(const InductionCheck& c) {
  return {{"lhs_haar", to_json(c.lhs_haar)},
          {"rhs_haar", to_json(c.rhs_haar)},
          {"lhs_push", to_json(c.lhs_push)},
          {"rhs_push", to_json(c.rhs_push)},
          {"pass", c.pass}};
}

json to_json(const VirtualCharacter& v) {
  json terms = json::array();
  for (const auto& t : v.terms) {
    terms.push_back({{"coefficient", t.coefficient.str()}, {"subgroup", t.source->name}, {"inner", t.inner.label}});
  }
  return {{"model", v.model}, {"terms", terms}, {"residual", round_sig(v.residual)}};
}

json model_metadata(const GroupModel& m) {
  json comps = json::array();
  for (int c = 0; c < m.order(); ++c) comps.push_back({{"label", m.components.label(c)}, {"rank", m.rank(c)}});
  json labels = json::array();
  for (const auto& c : m.characters) labels.push_back(c.label);
  const auto& d = m.derived_group_metadata;
  return {{"name", m.name},
          {"weight", m.weight},
          {"dim_V", m.dim_V},
          {"component_group_order", m.order()},
          {"components", comps},
          {"char_cap", m.char_cap},
          {"characters", labels},
          {"has_minus_id_in_identity_component", m.has_minus_id_in_identity_component},
          {"derived_group", {{"simple_factor_types", d.simple_factor_types},
                             {"pairwise_distinct", d.pairwise_distinct},
                             {"has_diagram_automorphism", d.has_diagram_automorphism}}}};
}

}  // namespace satotate
