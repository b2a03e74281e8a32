#include "satotate/equidist.hpp"

#include <algorithm>
#include <cmath>

#include "satotate/errors.hpp"
#include "satotate/measures.hpp"
#include "satotate/quadrature.hpp"
#include "satotate/sampling.hpp"

namespace satotate {

namespace {

using Complex = std::complex<double>;

constexpr double kHaarSelfCheckTol = 1e-6;

void require_positive_z(double z) {
  if (!(z > 0.0)) throw ContractError("z must be positive");
}

Complex average(const std::vector<ClassPoint>& pts, const CharacterSpec& chi) {
  std::vector<Complex> v;
  v.reserve(pts.size());
  for (const auto& x : pts) v.push_back(chi.eval(x));
  return pairwise_sum(v) / static_cast<double>(pts.size());
}

Verdict verdict_from(const EquidistReport& r, std::size_t effective_n) {
  if (effective_n < kMinSamples) return Verdict::inconclusive;
  const bool all = std::all_of(r.per_character.begin(), r.per_character.end(),
                               [](const CharacterCheck& c) { return c.pass; });
  return all ? Verdict::pass : Verdict::fail;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

const char* to_string(SequenceSource s) {
  switch (s) {
    case SequenceSource::synthetic_haar: return "synthetic_haar";
    case SequenceSource::synthetic_custom: return "synthetic_custom";
    case SequenceSource::frobenius: return "frobenius";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::pass;
}

ClassSequence make_sequence(ModelPtr model, std::vector<ClassPoint> points, SequenceSource source) {
  if (!model) throw ContractError("sequence needs a model");
  if (points.empty()) throw ContractError("class sequence must contain at least one point");
  for (const auto& x : points) model->validate(x);
  return {std::move(model), std::move(points), source};
}

ClassSequence sample_haar(ModelPtr model, std::size_t n, std::uint64_t seed) {
  auto pts = sample_haar_points(*model, n, seed);
  return make_sequence(std::move(model), std::move(pts), SequenceSource::synthetic_haar);
}

EquidistReport weyl_test(const ClassSequence& seq, int char_cap, double z) {
  if (seq.points.empty()) throw ContractError("weyl_test: empty sequence");
  require_positive_z(z);
  const GroupModel& model = *seq.model;
  EquidistReport r;
  r.test = "weyl";
  r.model = model.name;
  r.n_samples = seq.points.size();
  r.char_cap = char_cap;
  r.z = z;
  const double sqrt_n = std::sqrt(static_cast<double>(r.n_samples));
  for (const CharacterSpec* chi : model.nontrivial_characters(char_cap)) {
    const Complex numeric = integrate_class_function(model, as_class_function(*chi));
    if (std::abs(numeric) > kHaarSelfCheckTol) {
      throw ModelIntegrityError(model.name + ": Haar integral of nontrivial irreducible '" + chi->label +
                                "' is not zero");
    }
    CharacterCheck c;
    c.label = chi->label;
    c.empirical_average = average(seq.points, *chi);
    c.haar_integral = 0.0;
    c.threshold = z * chi->dimension / sqrt_n;
    c.pass = std::abs(c.empirical_average - c.haar_integral) <= c.threshold;
    r.per_character.push_back(std::move(c));
  }
  if (r.per_character.empty()) {
    r.verdict = Verdict::inconclusive;
    r.diagnostic = "no nontrivial characters up to the cap";
    return r;
  }
  r.verdict = verdict_from(r, r.n_samples);
  if (r.verdict == Verdict::inconclusive) r.diagnostic = "fewer than 100 samples";
  return r;
}

EquidistReport filtered_subsequence_test(const SubgroupInclusion& incl, const ClassSequence& seq, int char_cap,
                                         double z, bool gate_ratio) {
  if (seq.points.empty()) throw ContractError("filtered_subsequence_test: empty sequence");
  require_positive_z(z);
  if (seq.model->name != incl.amb->name) {
    throw ContractError("filtered_subsequence_test: sequence on " + seq.model->name + ", inclusion into " +
                        incl.amb->name);
  }
  const std::vector<int> img = incl.image_components();
  std::vector<ClassPoint> filtered;
  for (const auto& x : seq.points) {
    if (std::find(img.begin(), img.end(), x.component) != img.end()) filtered.push_back(x);
  }
  EquidistReport r;
  r.test = "filtered:" + incl.name;
  r.model = incl.amb->name;
  r.n_samples = seq.points.size();
  r.char_cap = char_cap;
  r.z = z;
  const double n = static_cast<double>(r.n_samples);
  const double k = static_cast<double>(filtered.size());
  r.k_ratio = k / n;

  if (gate_ratio) {
    CharacterCheck ratio;
    ratio.label = "k_n/n";
    ratio.empirical_average = *r.k_ratio;
    ratio.haar_integral = 1.0 / incl.index;
    ratio.threshold = z / std::sqrt(n);
    ratio.pass = std::abs(*r.k_ratio - 1.0 / incl.index) <= ratio.threshold;
    r.per_character.push_back(ratio);
  }
  if (filtered.empty()) {
    r.verdict = Verdict::inconclusive;
    r.diagnostic = "no samples in the image of the class map";
    return r;
  }
  for (const CharacterSpec* chi : incl.amb->nontrivial_characters(char_cap)) {
    CharacterCheck c;
    c.label = chi->label;
    c.empirical_average = average(filtered, *chi);
    c.haar_integral = pushforward_integrate(incl, as_class_function(*chi));
    c.threshold = z * chi->dimension / std::sqrt(k);
    c.pass = std::abs(c.empirical_average - c.haar_integral) <= c.threshold;
    r.per_character.push_back(std::move(c));
  }
  r.verdict = verdict_from(r, filtered.size());
  if (r.verdict == Verdict::inconclusive) r.diagnostic = "fewer than 100 samples in the image of the class map";
  if (!gate_ratio) r.diagnostic = "k_n/n recorded without gating";
  return r;
}

EquidistReport component_frequency_test(const ClassSequence& seq, double z) {
  if (seq.points.empty()) throw ContractError("component_frequency_test: empty sequence");
  require_positive_z(z);
  const GroupModel& model = *seq.model;
  std::vector<std::size_t> counts(model.order(), 0);
  for (const auto& x : seq.points) ++counts[x.component];
  EquidistReport r;
  r.test = "component_frequency";
  r.model = model.name;
  r.n_samples = seq.points.size();
  r.char_cap = 0;
  r.z = z;
  const double n = static_cast<double>(r.n_samples);
  const double p = 1.0 / model.order();
  const double spread = p * (1.0 - p);
  const double thr = spread > 0.0 ? z * std::sqrt(spread / n) : z / (2.0 * std::sqrt(n));
  for (int c = 0; c < model.order(); ++c) {
    CharacterCheck e;
    e.label = model.components.label(c);
    e.empirical_average = static_cast<double>(counts[c]) / n;
    e.haar_integral = p;
    e.threshold = thr;
    e.pass = std::abs(e.empirical_average.real() - p) <= thr;
    r.per_character.push_back(std::move(e));
  }
  r.verdict = verdict_from(r, r.n_samples);
  return r;
}

CyclicReductionResult cyclic_reduction_test(const std::vector<SubgroupInclusion>& tower, const ClassSequence& seq,
                                            int char_cap, double z) {
  if (tower.empty()) throw ContractError("cyclic_reduction_test: empty tower");
  CyclicReductionResult out;
  out.verdict = Verdict::pass;
  for (const auto& incl : tower) {
    if (incl.amb->name != seq.model->name) {
      throw ContractError("cyclic_reduction_test: " + incl.name + " is not a subgroup of " + seq.model->name);
    }
    EquidistReport rep = incl.sub->name == incl.amb->name ? weyl_test(seq, char_cap, z)
                                                          : filtered_subsequence_test(incl, seq, char_cap, z, false);
    out.verdict = combine(out.verdict, rep.verdict);
    out.levels.push_back({incl.sub->name, std::move(rep)});
  }
  return out;
}

int split_prime_prediction(const SubgroupInclusion& incl, const ClassPoint& x) {
  incl.amb->validate(x);
  const std::optional<ClassPoint> y = incl.lift(x);
  if (!y) return 0;
  int count = 0;
  for (const auto& act : incl.coset_reps)
    if (incl.sub->is_valid(act(*y))) ++count;
  return count;
}

ClassSequence fiber_expanded_sequence(const SubgroupInclusion& incl, const ClassSequence& seq) {
  std::vector<ClassPoint> pts;
  for (const auto& x : seq.points) {
    const std::optional<ClassPoint> y = incl.lift(x);
    if (!y) continue;
    for (const auto& act : incl.coset_reps) {
      const ClassPoint g = act(*y);
      pts.push_back(incl.sub->canonical(g.component, g.angles()));
    }
  }
  return make_sequence(incl.sub, std::move(pts), seq.source);
}

}  // namespace satotate
