#pragma once

// Parity group of a model (order 1 or 2) and the sign-character obstruction.
// The Betti, l-adic and Sato-Tate parity groups are represented by this one
// verdict per model.

#include <cstddef>
#include <string>

#include "satotate/equidist.hpp"
#include "satotate/groups.hpp"

namespace satotate {

enum class ParityCriterion { odd_weight, even_weight_odd_dim, minus_id_membership };

const char* to_string(ParityCriterion c);

struct ParityVerdict {
  int order = 1;
  ParityCriterion criterion_used = ParityCriterion::minus_id_membership;
  bool minus_id_in_tilde = true;
};

/// Order 2 iff -Id is missing from the identity (tilde) part. The weight and
/// dimension criteria are cross-checked against the membership flag; a
/// disagreement throws ModelIntegrityError.
ParityVerdict parity_group_order(const GroupModel& model);

struct ObstructionResult {
  double sign_average = 0.0;
  double haar_value = 0.0;
  double threshold = 0.0;
  std::size_t n_samples = 0;
  bool obstructed = false;
  int parity_order = 1;
  /// Parity trivial: the plain and tilde statements are equivalent.
  bool statements_equivalent = false;
};

/// Average of the sign character along the sequence versus its Haar value 0.
/// Throws UnsupportedModelError when the model has no sign character.
ObstructionResult obstruction_test(const ClassSequence& seq, double z = kDefaultZ);

}  // namespace satotate
