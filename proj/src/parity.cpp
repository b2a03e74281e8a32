#include "satotate/parity.hpp"

#include <cmath>
#include <vector>

#include "satotate/errors.hpp"
#include "satotate/measures.hpp"
#include "satotate/quadrature.hpp"

namespace satotate {

const char* to_string(ParityCriterion c) {
  switch (c) {
    case ParityCriterion::odd_weight: return "odd_weight";
    case ParityCriterion::even_weight_odd_dim: return "even_weight_odd_dim";
    case ParityCriterion::minus_id_membership: return "minus_id_membership";
  }
  return "?";
}

ParityVerdict parity_group_order(const GroupModel& model) {
  ParityVerdict v;
  v.minus_id_in_tilde = model.has_minus_id_in_identity_component;
  v.order = v.minus_id_in_tilde ? 1 : 2;

  const bool identity_holds_minus_id =
      model.minus_id_component && *model.minus_id_component == model.components.identity();
  if (identity_holds_minus_id != model.has_minus_id_in_identity_component) {
    throw ModelIntegrityError(model.name + ": -Id component disagrees with the identity-component flag");
  }
  if (model.weight % 2 != 0) {
    v.criterion_used = ParityCriterion::odd_weight;
    if (v.order != 1) throw ModelIntegrityError(model.name + ": odd weight but -Id outside the identity component");
  } else if (model.dim_V % 2 != 0) {
    v.criterion_used = ParityCriterion::even_weight_odd_dim;
    if (v.order != 2) throw ModelIntegrityError(model.name + ": even weight, odd dimension, but -Id in the identity component");
  } else {
    v.criterion_used = ParityCriterion::minus_id_membership;
  }
  // When -Id lies in the model but outside the identity part, it must sit in
  // a coset separated by the sign character.
  if (v.order == 2 && model.minus_id_component) {
    const CharacterSpec* sign = model.sign_character();
    if (!sign) throw ModelIntegrityError(model.name + ": -Id coset without a sign character");
  }
  return v;
}

ObstructionResult obstruction_test(const ClassSequence& seq, double z) {
  if (seq.points.empty()) throw ContractError("obstruction_test: empty sequence");
  if (!(z > 0.0)) throw ContractError("z must be positive");
  const GroupModel& model = *seq.model;
  const CharacterSpec* sign = model.sign_character();
  if (!sign) throw UnsupportedModelError(model.name + " has no sign character");

  ObstructionResult r;
  std::vector<double> v;
  v.reserve(seq.points.size());
  for (const auto& x : seq.points) v.push_back(sign->eval(x).real());
  r.n_samples = seq.points.size();
  r.sign_average = pairwise_sum(v) / static_cast<double>(r.n_samples);
  r.haar_value = integrate_class_function(model, as_class_function(*sign)).real();
  if (std::abs(r.haar_value) > 1e-12) throw ModelIntegrityError(model.name + ": sign character has nonzero Haar mean");
  r.haar_value = 0.0;
  r.threshold = z / std::sqrt(static_cast<double>(r.n_samples));
  r.obstructed = std::abs(r.sign_average) > r.threshold;
  r.parity_order = parity_group_order(model).order;
  r.statements_equivalent = r.parity_order == 1;
  return r;
}

}  // namespace satotate
