#pragma once

// Finite-sample equidistribution tests on sequences of conjugacy classes.
// Limits are replaced by CLT-style bands z * dim / sqrt(n); z defaults to 4.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "satotate/groups.hpp"

namespace satotate {

inline constexpr double kDefaultZ = 4.0;
/// Below this many samples a test reports INCONCLUSIVE.
inline constexpr std::size_t kMinSamples = 100;

enum class SequenceSource { synthetic_haar, synthetic_custom, frobenius };

struct ClassSequence {
  ModelPtr model;
  std::vector<ClassPoint> points;
  SequenceSource source = SequenceSource::synthetic_custom;
};

/// Validates every point against the model.
ClassSequence make_sequence(ModelPtr model, std::vector<ClassPoint> points,
                            SequenceSource source = SequenceSource::synthetic_custom);

ClassSequence sample_haar(ModelPtr model, std::size_t n, std::uint64_t seed);

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);
const char* to_string(SequenceSource s);

/// FAIL dominates INCONCLUSIVE dominates PASS.
Verdict combine(Verdict a, Verdict b);

struct CharacterCheck {
  std::string label;
  std::complex<double> empirical_average;
  std::complex<double> haar_integral;
  double threshold = 0.0;
  bool pass = false;
};

struct EquidistReport {
  std::string test;
  std::string model;
  std::vector<CharacterCheck> per_character;
  std::size_t n_samples = 0;
  std::optional<double> k_ratio;
  Verdict verdict = Verdict::inconclusive;
  int char_cap = kDefaultCharCap;
  double z = kDefaultZ;
  std::string diagnostic;
};

/// Weyl criterion over the listed nontrivial irreducibles up to char_cap.
EquidistReport weyl_test(const ClassSequence& seq, int char_cap = kDefaultCharCap, double z = kDefaultZ);

/// Subsequence in the image of X(j) against j_* mu_0, plus the k_n/n check
/// against 1/[G:G0]. With gate_ratio = false the ratio is recorded but does
/// not enter the verdict.
EquidistReport filtered_subsequence_test(const SubgroupInclusion& incl, const ClassSequence& seq,
                                         int char_cap = kDefaultCharCap, double z = kDefaultZ,
                                         bool gate_ratio = true);

/// Component frequencies against the uniform distribution on pi0.
EquidistReport component_frequency_test(const ClassSequence& seq, double z = kDefaultZ);

struct SubgroupReport {
  std::string subgroup;
  EquidistReport report;
};

struct CyclicReductionResult {
  std::vector<SubgroupReport> levels;
  Verdict verdict = Verdict::inconclusive;
};

/// One pushforward test per intermediate G1 of the tower; the level G itself
/// runs the Weyl test on the whole sequence.
CyclicReductionResult cyclic_reduction_test(const std::vector<SubgroupInclusion>& tower, const ClassSequence& seq,
                                            int char_cap = kDefaultCharCap, double z = kDefaultZ);

/// Number of coset representatives conjugating x into the subgroup.
int split_prime_prediction(const SubgroupInclusion& incl, const ClassPoint& x);

/// The G0-sequence (g_i y g_i^{-1})_{i,k} over the filtered subsequence, one
/// entry per coset representative.
ClassSequence fiber_expanded_sequence(const SubgroupInclusion& incl, const ClassSequence& seq);

}  // namespace satotate
