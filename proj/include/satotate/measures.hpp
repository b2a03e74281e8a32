#pragma once

// Haar and pushforward integration of class functions, induced characters
// from open normal subgroups, and Artin decomposition over the component group.

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "satotate/groups.hpp"
#include "satotate/rational.hpp"

namespace satotate {

struct ClassFunction {
  std::string model;
  std::function<std::complex<double>(const ClassPoint&)> eval;

  std::complex<double> operator()(const ClassPoint& x) const { return eval(x); }
};

ClassFunction as_class_function(const CharacterSpec& chi);

/// Per-angle node count actually used on a component of the given rank:
/// rank-2 components are capped at kDefaultNodes2D per angle.
int nodes_for_rank(int rank, int nodes);

/// Canonical quadrature nodes on one component with weights of the normalized
/// class measure (summing to 1). Cached per node count on the component spec.
std::shared_ptr<const std::vector<MeasureNode>> measure_nodes(const GroupModel& model, int component,
                                                              int nodes = kDefaultNodes1D);

/// Haar integral over one component, normalized to total mass 1 on that component.
std::complex<double> component_integral(const GroupModel& model, int component, const ClassFunction& f,
                                        int nodes = kDefaultNodes1D);

/// (1/|pi0|) * sum over components of the component integrals.
std::complex<double> integrate_class_function(const GroupModel& model, const ClassFunction& f,
                                              int nodes = kDefaultNodes1D);

/// Integral of f against j_* mu_0, i.e. the G0 integral of f composed with X(j).
std::complex<double> pushforward_integrate(const SubgroupInclusion& incl, const ClassFunction& f,
                                           int nodes = kDefaultNodes1D);

/// g -> sum_i chi0(g_i^{-1} g g_i), zero off the image of G0.
/// Throws UnsupportedInclusionError for a non-normal inclusion.
ClassFunction induce_character(const SubgroupInclusion& incl, const CharacterSpec& chi0);

struct InductionCheck {
  std::complex<double> lhs_haar;  // int_G Ind(chi0) dmu
  std::complex<double> rhs_haar;  // int_G0 chi0 dmu0
  std::complex<double> lhs_push;  // int_G Ind(chi0) d j_* mu0
  std::complex<double> rhs_push;  // [G:G0] int_G0 chi0 dmu0
  bool pass = false;
};

InductionCheck check_induction_identities(const SubgroupInclusion& incl, const CharacterSpec& chi0,
                                          int nodes = kDefaultNodes1D, double tol = 1e-8);

/// The same checks for several characters of the subgroup in one sweep over the nodes.
std::vector<InductionCheck> check_induction_identities(const SubgroupInclusion& incl,
                                                       std::span<const CharacterSpec> chars,
                                                       int nodes = kDefaultNodes1D, double tol = 1e-8);

/// Matrix of Haar inner products <chi_i, chi_j> on the model.
std::vector<std::vector<std::complex<double>>> gram_matrix(const GroupModel& model,
                                                           std::span<const CharacterSpec> chars, int nodes);

struct VirtualTerm {
  Rational coefficient;
  std::shared_ptr<const SubgroupInclusion> source;
  CharacterSpec inner;
};

/// Rational combination of characters induced from open subgroups.
struct VirtualCharacter {
  std::string model;
  std::vector<VirtualTerm> terms;
  /// Sup-norm residual against the target on the verification grid.
  double residual = 0.0;

  std::complex<double> evaluate(const ClassPoint& x) const;
};

/// Writes chi as a rational combination of Ind_H(psi) over the supplied
/// intermediates H (preimages of cyclic subgroups of the component group),
/// verified pointwise on 1000 Halton points per component.
VirtualCharacter artin_decompose(const GroupModel& model, const CharacterSpec& chi,
                                 std::span<const SubgroupInclusion> intermediates, double tol = 1e-8);

}  // namespace satotate
