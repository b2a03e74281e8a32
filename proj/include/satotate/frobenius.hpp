#pragma once

// Frobenius data of elliptic curves y^2 = x^3 + a x + b over Q by naive point
// counting, and the normalized classes they define in the group models.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "satotate/groups.hpp"

namespace satotate {

struct CurveSpec {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string label;
};

/// 4a^3 + 27b^2; the discriminant is -16 times this.
__int128 discriminant_core(const CurveSpec& curve);
bool is_singular(const CurveSpec& curve);

/// Throws ContractError for a singular curve.
CurveSpec make_curve(std::int64_t a, std::int64_t b);

/// Primes 5 <= p <= bound in ascending order (2 and 3 are excluded).
std::vector<std::int64_t> prime_sieve(std::int64_t bound);

bool is_prime(std::int64_t n);

bool has_good_reduction(const CurveSpec& curve, std::int64_t p);

/// #E(F_p) including the point at infinity. Throws BadReductionError when p
/// divides the discriminant, ContractError for p < 5.
std::int64_t count_points(const CurveSpec& curve, std::int64_t p);

/// a_p = p + 1 - #E(F_p), with the Hasse bound asserted.
std::int64_t trace_of_frobenius(const CurveSpec& curve, std::int64_t p);

struct ApRecord {
  std::int64_t p = 0;
  std::int64_t ap = 0;
  friend bool operator==(const ApRecord&, const ApRecord&) = default;
};

struct GenerationResult {
  std::vector<ApRecord> rows;
  std::vector<std::int64_t> skipped;  // bad-reduction primes
};

/// a_p for every good prime 5 <= p <= bound. Work is split across `threads`
/// workers; rows are merged in prime order, so the output does not depend on
/// the thread count.
GenerationResult generate_ap(const CurveSpec& curve, std::int64_t bound, unsigned threads = 1);

struct FrobeniusSample {
  std::int64_t p = 0;
  std::int64_t ap = 0;
  int weight = 1;
  ClassPoint class_point;
  int component = 0;
  int residue_degree = 1;
};

/// Hasse check |a_p| <= 2 sqrt(p), in exact integer arithmetic.
bool within_hasse(std::int64_t ap, std::int64_t p);

/// Normalized Frobenius class on SU2 or N_U1.
ClassPoint normalized_class(std::int64_t ap, std::int64_t p, const GroupModel& model);

/// Class of Sym^2 of an SU2 class, with eigenvalues e^{2it}, 1, e^{-2it}; it
/// always lies in the identity (SO3) component.
ClassPoint symmetric_square_class(const ClassPoint& su2_point, const GroupModel& target);

std::vector<FrobeniusSample> make_samples(std::span<const ApRecord> rows, const GroupModel& model);

/// Primes of residue degree 1. Over Q every prime qualifies, so this keeps
/// everything; ingested data tagged with a larger degree is dropped.
std::vector<FrobeniusSample> filter_degree_one(std::vector<FrobeniusSample> samples);

inline constexpr double kDefaultCmThreshold = 0.2;
inline constexpr std::size_t kMinCmSamples = 500;

/// True iff the proportion of a_p = 0 exceeds the threshold.
bool cm_detect(std::span<const FrobeniusSample> samples, double threshold = kDefaultCmThreshold);
bool cm_detect(std::span<const ApRecord> rows, double threshold = kDefaultCmThreshold);

/// CSV with header `p,ap`; `#` starts a comment line. Throws CsvError with the
/// 1-based line number of the first bad row.
std::vector<ApRecord> read_ap_csv(std::istream& in, bool negate_ap = false);
void write_ap_csv(std::ostream& out, std::span<const ApRecord> rows);

}  // namespace satotate
