#pragma once

// JSON serialization of reports. Schema version 1; every float is rounded to
// 12 significant digits so identical runs give byte-identical output.

#include <complex>

#include "json.hpp"
#include "satotate/equidist.hpp"
#include "satotate/groups.hpp"
#include "satotate/measures.hpp"
#include "satotate/parity.hpp"

namespace satotate {

inline constexpr int kSchemaVersion = 1;

double round_sig(double v, int digits = 12);

nlohmann::json to_json(std::complex<double> z);
nlohmann::json to_json(const EquidistReport& r);
nlohmann::json to_json(const CyclicReductionResult& r);
nlohmann::json to_json(const ParityVerdict& v);
nlohmann::json to_json(const ObstructionResult& r);
nlohmann::json to_json(const InductionCheck& c);
nlohmann::json to_json(const VirtualCharacter& v);

/// Name, weight, dim_V, |pi0|, ranks, character labels and group metadata.
nlohmann::json model_metadata(const GroupModel& model);

}  // namespace satotate
