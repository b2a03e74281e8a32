#pragma once

// Compact group models presented through their conjugacy-class spaces: a
// finite component group, per-component torus-angle coordinates with a Weyl
// class density, and a truncated table of irreducible characters.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "satotate/quadrature.hpp"

namespace satotate {

inline constexpr std::size_t kMaxRank = 2;
inline constexpr int kDefaultCharCap = 6;
inline constexpr int kDefaultNodes1D = 4096;
inline constexpr int kDefaultNodes2D = 512;

/// Finite group given by its multiplication table; elements are 0..order-1.
class ComponentGroup {
 public:
  ComponentGroup() = default;
  ComponentGroup(std::vector<std::string> labels, std::vector<std::vector<int>> mult_table, int identity);

  /// Cyclic group of order n with labels supplied by the caller.
  static ComponentGroup cyclic(std::vector<std::string> labels);

  int order() const { return static_cast<int>(labels_.size()); }
  int identity() const { return identity_; }
  const std::string& label(int g) const { return labels_.at(g); }
  const std::vector<std::string>& labels() const { return labels_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const;
  int element_order(int a) const;
  std::optional<int> find(std::string_view label) const;

  /// Exhaustive check of closure, associativity, identity and inverses.
  bool is_group() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
};

/// A conjugacy class: component index plus torus angles in the component's
/// fundamental domain.
struct ClassPoint {
  int component = 0;
  std::uint8_t rank = 0;
  std::array<double, kMaxRank> angle{};

  ClassPoint() = default;
  ClassPoint(int component_index, std::initializer_list<double> angles);
  ClassPoint(int component_index, std::span<const double> angles);

  std::span<const double> angles() const { return {angle.data(), rank}; }
  double operator[](std::size_t i) const { return angle[i]; }
};

struct CharacterSpec {
  std::string label;
  int dimension = 1;
  std::function<std::complex<double>(const ClassPoint&)> eval;
  bool is_trivial = false;
  /// Name of the owning model.
  std::string model;
  /// Largest highest-weight parameter; the character cap filters on this.
  int level = 0;
  /// +1 on the identity component's coset structure, -1 on the other coset.
  bool is_sign = false;
};

/// Coordinates of the class space on one component.
enum class AngleKind {
  circle,       // [0, 2pi)
  half_circle,  // [0, pi]
  quarter,      // [0, pi/2]
};

/// A quadrature node of the normalized class measure on one component.
struct MeasureNode {
  ClassPoint point;
  double weight = 0.0;
};

/// Node tables by per-angle node count, shared between copies of a spec.
struct MeasureNodeCache {
  std::mutex mutex;
  std::map<int, std::shared_ptr<const std::vector<MeasureNode>>> tables;
};

struct ComponentSpec {
  int rank = 0;
  std::array<AngleKind, kMaxRank> kinds{};
  /// Weyl-chamber ordering angle[0] >= angle[1] (USp(4)-type components).
  bool ordered = false;
  /// Unnormalized Weyl weight on the integration box.
  std::function<double(std::span<const double>)> weight;
  /// Integral of `weight` over the box (computed when the model is built).
  double normalizer = 1.0;
  /// Upper bound of weight/normalizer on the box, for rejection sampling.
  double density_bound = 1.0;
  /// Filled lazily by the integrator; the weight must not change afterwards.
  std::shared_ptr<MeasureNodeCache> node_cache = std::make_shared<MeasureNodeCache>();

  std::vector<Interval> box() const;
  /// Number of box points per generic class (2 for an ordered chamber).
  int fold_multiplicity() const { return ordered ? 2 : 1; }
  /// Map arbitrary angles onto the canonical representative.
  void fold(std::span<double> angles) const;
  bool in_domain(std::span<const double> angles) const;
};

struct DerivedGroupMetadata {
  std::vector<std::string> simple_factor_types;
  bool pairwise_distinct = true;
  bool has_diagram_automorphism = false;
};

struct GroupModel {
  std::string name;
  int weight = 1;
  int dim_V = 2;
  ComponentGroup components;
  std::vector<ComponentSpec> component_specs;
  std::vector<CharacterSpec> characters;
  bool has_minus_id_in_identity_component = true;
  /// Component containing -Id, if -Id belongs to the model at all.
  std::optional<int> minus_id_component;
  DerivedGroupMetadata derived_group_metadata;
  /// Trace of the defining representation V.
  std::function<double(const ClassPoint&)> trace;
  int char_cap = kDefaultCharCap;

  int order() const { return components.order(); }
  int rank(int component) const { return component_specs.at(component).rank; }
  bool is_connected() const { return order() == 1; }

  bool is_valid(const ClassPoint& x) const;
  /// Throws DomainError when x is not a canonical class point of this model.
  void validate(const ClassPoint& x) const;
  /// Canonical class point for arbitrary angles on the given component.
  ClassPoint canonical(int component, std::span<const double> raw_angles) const;
  ClassPoint canonical(int component, std::initializer_list<double> raw_angles) const;
  ClassPoint identity_class() const;
  /// Classes equal up to `tol` (circle coordinates compared modulo 2pi).
  bool same_class(const ClassPoint& a, const ClassPoint& b, double tol = 1e-12) const;

  const CharacterSpec& character(std::string_view label) const;
  const CharacterSpec* find_character(std::string_view label) const;
  const CharacterSpec* sign_character() const;
  std::vector<const CharacterSpec*> nontrivial_characters(int cap) const;
};

using ModelPtr = std::shared_ptr<const GroupModel>;

const std::vector<std::string>& builtin_model_names();

/// Catalog lookup; throws CatalogError with the list of valid names.
ModelPtr builtin_model(std::string_view name, int char_cap = kDefaultCharCap);

double class_density(const GroupModel& model, const ClassPoint& x);

/// Throws ContractError when chi does not belong to model.
std::complex<double> character_value(const GroupModel& model, const CharacterSpec& chi, const ClassPoint& x);

/// Action of a coset representative: y -> g_i^{-1} y g_i on classes of G0.
using ClassAction = std::function<ClassPoint(const ClassPoint&)>;

struct SubgroupInclusion {
  std::string name;
  ModelPtr sub;
  ModelPtr amb;
  int index = 1;
  std::vector<ClassAction> coset_reps;
  /// The class map X(j).
  std::function<ClassPoint(const ClassPoint&)> embed;
  /// A preimage under X(j), or nullopt when x is outside the image.
  std::function<std::optional<ClassPoint>(const ClassPoint&)> lift;
  /// Whether every coset action maps G0 classes to G0 classes.
  bool normal = true;

  /// Components of the ambient model met by the image of X(j).
  std::vector<int> image_components() const;
  bool in_image(const ClassPoint& x) const;
};

/// Builds an inclusion and checks normality of the coset actions on a grid.
SubgroupInclusion make_inclusion(std::string name, ModelPtr sub, ModelPtr amb,
                                 std::vector<ClassAction> coset_reps,
                                 std::function<ClassPoint(const ClassPoint&)> embed,
                                 std::function<std::optional<ClassPoint>(const ClassPoint&)> lift);

SubgroupInclusion identity_inclusion(ModelPtr model);

/// Built-in open normal inclusions: "U1<N_U1", "SO3<O3_CANDIDATE", or "G<G".
SubgroupInclusion builtin_inclusion(std::string_view sub, std::string_view amb,
                                    int char_cap = kDefaultCharCap);

/// Every built-in inclusion, identity inclusions included.
std::vector<SubgroupInclusion> builtin_inclusions(int char_cap = kDefaultCharCap);

/// Preimages of the cyclic subgroups of the component group, smallest first.
std::vector<SubgroupInclusion> cyclic_intermediates(const ModelPtr& model);

ClassPoint fuse_class(const SubgroupInclusion& incl, const ClassPoint& y);

/// Distinct G0-classes {g_i y g_i^{-1}} over a preimage y of x.
std::vector<ClassPoint> fusion_fiber(const SubgroupInclusion& incl, const ClassPoint& x);

/// Chebyshev polynomial of the second kind: the SU(2) character sin((k+1)t)/sin(t) at c = cos t.
double chebyshev_u(int k, double c);

}  // namespace satotate
