#include "satotate/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "satotate/errors.hpp"
#include "satotate/sampling.hpp"

namespace satotate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Complex = std::complex<double>;

double fold_circle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi || t == 0.0) t = 0.0;  // also clears -0.0
  return t;
}

double fold_half(double t) {
  t = fold_circle(t);
  return t > kPi ? kTwoPi - t : t;
}

double fold_quarter(double t) {
  t = fold_half(t);
  return t > 0.5 * kPi ? kPi - t : t;
}

double upper(AngleKind k) {
  switch (k) {
    case AngleKind::circle: return kTwoPi;
    case AngleKind::half_circle: return kPi;
    case AngleKind::quarter: return 0.5 * kPi;
  }
  return 0.0;
}

ComponentSpec make_spec(std::initializer_list<AngleKind> kinds, bool ordered,
                        std::function<double(std::span<const double>)> weight) {
  ComponentSpec s;
  s.rank = static_cast<int>(kinds.size());
  std::copy(kinds.begin(), kinds.end(), s.kinds.begin());
  s.ordered = ordered;
  s.weight = std::move(weight);
  if (s.rank == 0) return s;

  const std::vector<Interval> box = s.box();
  const int nodes = s.rank == 1 ? kDefaultNodes1D : kDefaultNodes2D;
  s.normalizer = integrate_box(box, nodes, [&](std::span<const double> a) { return s.weight(a); });

  // Grid maximum with headroom; the weights are smooth trigonometric polynomials.
  constexpr int kGrid = 257;
  double wmax = 0.0;
  if (s.rank == 1) {
    for (int i = 0; i < kGrid; ++i) {
      const double a[1] = {box[0].lo + box[0].length() * i / (kGrid - 1)};
      wmax = std::max(wmax, s.weight(a));
    }
  } else {
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const double a[2] = {box[0].lo + box[0].length() * i / (kGrid - 1),
                             box[1].lo + box[1].length() * j / (kGrid - 1)};
        wmax = std::max(wmax, s.weight(a));
      }
    }
  }
  s.density_bound = 1.1 * wmax / s.normalizer;
  return s;
}

ComponentSpec point_spec() { return make_spec({}, false, [](std::span<const double>) { return 1.0; }); }

double one(std::span<const double>) { return 1.0; }
double sin2_0(std::span<const double> a) { return std::sin(a[0]) * std::sin(a[0]); }
double sin2_1(std::span<const double> a) { return std::sin(a[1]) * std::sin(a[1]); }
double sin2_both(std::span<const double> a) { return sin2_0(a) * sin2_1(a); }
double usp4_weight(std::span<const double> a) {
  const double d = std::cos(a[0]) - std::cos(a[1]);
  return d * d * sin2_both(a);
}

CharacterSpec make_char(const std::string& model, std::string label, int dim, int level,
                        std::function<Complex(const ClassPoint&)> eval) {
  CharacterSpec c;
  c.label = std::move(label);
  c.dimension = dim;
  c.level = level;
  c.eval = std::move(eval);
  c.model = model;
  return c;
}

CharacterSpec trivial_char(const std::string& model) {
  CharacterSpec c = make_char(model, "1", 1, 0, [](const ClassPoint&) { return Complex(1.0, 0.0); });
  c.is_trivial = true;
  return c;
}

CharacterSpec sign_char(const std::string& model) {
  CharacterSpec c = make_char(model, "sign", 1, 0,
                              [](const ClassPoint& x) { return Complex(x.component == 0 ? 1.0 : -1.0, 0.0); });
  c.is_sign = true;
  return c;
}

/// Integers 1, -1, 2, -2, ... up to cap in absolute value, after 0.
std::vector<int> signed_range(int cap) {
  std::vector<int> r{0};
  for (int k = 1; k <= cap; ++k) {
    r.push_back(k);
    r.push_back(-k);
  }
  return r;
}

std::string power_label(const std::string& var, int k) {
  return var + "^" + std::to_string(k);
}

/// U_0..U_n at c.
void chebyshev_table(double c, int n, std::vector<double>& u) {
  u.resize(n + 1);
  u[0] = 1.0;
  if (n >= 1) u[1] = 2.0 * c;
  for (int j = 2; j <= n; ++j) u[j] = 2.0 * c * u[j - 1] - u[j - 2];
}

/// h_k of the four variables {x1, 1/x1, x2, 1/x2} from Chebyshev tables; negative k gives 0.
double complete_h(int k, const std::vector<double>& u1, const std::vector<double>& u2) {
  if (k < 0) return 0.0;
  double s = 0.0;
  for (int m = 0; m <= k; ++m) s += u1[m] * u2[k - m];
  return s;
}

int usp4_dimension(int a, int b) { return (a - b + 1) * (b + 1) * (a + 2) * (a + b + 3) / 6; }

GroupModel model_u1(int cap) {
  GroupModel m;
  m.name = "U1";
  m.components = ComponentGroup::cyclic({"e"});
  m.component_specs = {make_spec({AngleKind::circle}, false, one)};
  m.characters.push_back(trivial_char(m.name));
  for (int k : signed_range(cap)) {
    if (k == 0) continue;
    m.characters.push_back(make_char(m.name, power_label("z", k), 1, std::abs(k),
                                     [k](const ClassPoint& x) { return std::polar(1.0, k * x[0]); }));
  }
  m.minus_id_component = 0;
  m.trace = [](const ClassPoint& x) { return 2.0 * std::cos(x[0]); };
  return m;
}

GroupModel model_n_u1(int cap) {
  GroupModel m;
  m.name = "N_U1";
  m.components = ComponentGroup::cyclic({"e", "j"});
  m.component_specs = {make_spec({AngleKind::half_circle}, false, one), point_spec()};
  m.characters.push_back(trivial_char(m.name));
  m.characters.push_back(sign_char(m.name));
  for (int n = 1; n <= cap; ++n) {
    m.characters.push_back(make_char(m.name, "ind_" + std::to_string(n), 2, n, [n](const ClassPoint& x) {
      return Complex(x.component == 0 ? 2.0 * std::cos(n * x[0]) : 0.0, 0.0);
    }));
  }
  m.minus_id_component = 0;
  m.trace = [](const ClassPoint& x) { return x.component == 0 ? 2.0 * std::cos(x[0]) : 0.0; };
  return m;
}

GroupModel model_su2(int cap) {
  GroupModel m;
  m.name = "SU2";
  m.components = ComponentGroup::cyclic({"e"});
  m.component_specs = {make_spec({AngleKind::half_circle}, false, sin2_0)};
  m.characters.push_back(trivial_char(m.name));
  for (int k = 1; k <= cap; ++k) {
    m.characters.push_back(make_char(m.name, power_label("sym", k), k + 1, k, [k](const ClassPoint& x) {
      return Complex(chebyshev_u(k, std::cos(x[0])), 0.0);
    }));
  }
  m.minus_id_component = 0;
  m.derived_group_metadata.simple_factor_types = {"A1"};
  m.trace = [](const ClassPoint& x) { return 2.0 * std::cos(x[0]); };
  return m;
}

double two_angle_trace(const ClassPoint& x) { return 2.0 * std::cos(x[0]) + 2.0 * std::cos(x[1]); }

GroupModel model_u1xu1(int cap) {
  GroupModel m;
  m.name = "U1xU1";
  m.dim_V = 4;
  m.components = ComponentGroup::cyclic({"e"});
  m.component_specs = {make_spec({AngleKind::circle, AngleKind::circle}, false, one)};
  m.characters.push_back(trivial_char(m.name));
  for (int a : signed_range(cap)) {
    for (int b : signed_range(cap)) {
      if (a == 0 && b == 0) continue;
      m.characters.push_back(make_char(m.name, power_label("z1", a) + " " + power_label("z2", b), 1,
                                       std::max(std::abs(a), std::abs(b)), [a, b](const ClassPoint& x) {
                                         return std::polar(1.0, a * x[0] + b * x[1]);
                                       }));
    }
  }
  m.minus_id_component = 0;
  m.trace = two_angle_trace;
  return m;
}

GroupModel model_u1xsu2(int cap) {
  GroupModel m;
  m.name = "U1xSU2";
  m.dim_V = 4;
  m.components = ComponentGroup::cyclic({"e"});
  m.component_specs = {make_spec({AngleKind::circle, AngleKind::half_circle}, false, sin2_1)};
  m.characters.push_back(trivial_char(m.name));
  for (int a : signed_range(cap)) {
    for (int b = 0; b <= cap; ++b) {
      if (a == 0 && b == 0) continue;
      m.characters.push_back(make_char(m.name, power_label("z", a) + " " + power_label("sym", b), b + 1,
                                       std::max(std::abs(a), b), [a, b](const ClassPoint& x) {
                                         return std::polar(chebyshev_u(b, std::cos(x[1])), a * x[0]);
                                       }));
    }
  }
  m.minus_id_component = 0;
  m.derived_group_metadata.simple_factor_types = {"A1"};
  m.trace = two_angle_trace;
  return m;
}

GroupModel model_su2xsu2(int cap) {
  GroupModel m;
  m.name = "SU2xSU2";
  m.dim_V = 4;
  m.components = ComponentGroup::cyclic({"e"});
  m.component_specs = {make_spec({AngleKind::half_circle, AngleKind::half_circle}, false, sin2_both)};
  m.characters.push_back(trivial_char(m.name));
  for (int a = 0; a <= cap; ++a) {
    for (int b = 0; b <= cap; ++b) {
      if (a == 0 && b == 0) continue;
      m.characters.push_back(make_char(m.name, power_label("sym", a) + " x " + power_label("sym", b),
                                       (a + 1) * (b + 1), std::max(a, b), [a, b](const ClassPoint& x) {
                                         return Complex(chebyshev_u(a, std::cos(x[0])) *
                                                            chebyshev_u(b, std::cos(x[1])),
                                                        0.0);
                                       }));
    }
  }
  m.minus_id_component = 0;
  m.derived_group_metadata = {{"A1", "A1"}, false, true};
  m.trace = two_angle_trace;
  return m;
}

GroupModel model_usp4(int cap) {
  GroupModel m;
  m.name = "USp4";
  m.dim_V = 4;
  m.components = ComponentGroup::cyclic({"e"});
  m.component_specs = {make_spec({AngleKind::half_circle, AngleKind::half_circle}, true, usp4_weight)};
  m.characters.push_back(trivial_char(m.name));
  for (int a = 1; a <= cap; ++a) {
    for (int b = 0; b <= a; ++b) {
      // Symplectic Jacobi-Trudi (Koike-Terada) determinant for highest weight (a, b).
      m.characters.push_back(make_char(
          m.name, "V(" + std::to_string(a) + "," + std::to_string(b) + ")", usp4_dimension(a, b), a,
          [a, b](const ClassPoint& x) {
            thread_local std::vector<double> u1, u2;
            chebyshev_table(std::cos(x[0]), a + 1, u1);
            chebyshev_table(std::cos(x[1]), a + 1, u2);
            auto h = [&](int k) { return complete_h(k, u1, u2); };
            return Complex(h(a) * (h(b) + h(b - 2)) - h(b - 1) * (h(a + 1) + h(a - 1)), 0.0);
          }));
    }
  }
  m.minus_id_component = 0;
  m.derived_group_metadata.simple_factor_types = {"C2"};
  m.trace = two_angle_trace;
  return m;
}

void add_so3_characters(GroupModel& m, int cap, bool with_sign) {
  m.characters.push_back(trivial_char(m.name));
  if (with_sign) m.characters.push_back(sign_char(m.name));
  for (int l = 1; l <= cap; ++l) {
    auto d_l = [l](const ClassPoint& x) { return chebyshev_u(2 * l, std::cos(x[0])); };
    const std::string label = "D_" + std::to_string(l);
    m.characters.push_back(make_char(m.name, label, 2 * l + 1, l, [d_l](const ClassPoint& x) { return Complex(d_l(x), 0.0); }));
    if (with_sign) {
      m.characters.push_back(make_char(m.name, label + "*sign", 2 * l + 1, l, [d_l](const ClassPoint& x) {
        return Complex(x.component == 0 ? d_l(x) : -d_l(x), 0.0);
      }));
    }
  }
}

double so3_trace(double theta) { return 1.0 + 2.0 * std::cos(2.0 * theta); }

GroupModel model_so3(int cap) {
  GroupModel m;
  m.name = "SO3";
  m.weight = 2;
  m.dim_V = 3;
  m.components = ComponentGroup::cyclic({"e"});
  m.component_specs = {make_spec({AngleKind::quarter}, false, sin2_0)};
  add_so3_characters(m, cap, false);
  m.has_minus_id_in_identity_component = false;
  m.minus_id_component = std::nullopt;
  m.derived_group_metadata.simple_factor_types = {"A1"};
  m.trace = [](const ClassPoint& x) { return so3_trace(x[0]); };
  return m;
}

GroupModel model_o3_candidate(int cap) {
  GroupModel m;
  m.name = "O3_CANDIDATE";
  m.weight = 2;
  m.dim_V = 3;
  m.components = ComponentGroup::cyclic({"e", "-Id"});
  m.component_specs = {make_spec({AngleKind::quarter}, false, sin2_0),
                       make_spec({AngleKind::quarter}, false, sin2_0)};
  add_so3_characters(m, cap, true);
  m.has_minus_id_in_identity_component = false;
  m.minus_id_component = 1;
  m.derived_group_metadata.simple_factor_types = {"A1"};
  m.trace = [](const ClassPoint& x) { return x.component == 0 ? so3_trace(x[0]) : -so3_trace(x[0]); };
  return m;
}

std::string valid_names() {
  std::string s;
  for (const auto& n : builtin_model_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

ClassPoint identity_action(const ClassPoint& y) { return y; }

}  // namespace

// ---------------------------------------------------------------------------
// ComponentGroup

ComponentGroup::ComponentGroup(std::vector<std::string> labels, std::vector<std::vector<int>> mult_table,
                               int identity)
    : labels_(std::move(labels)), table_(std::move(mult_table)), identity_(identity) {
  const int n = order();
  if (n < 1) throw ContractError("component group must have at least one element");
  if (static_cast<int>(table_.size()) != n) throw ContractError("multiplication table has wrong size");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw ContractError("multiplication table has wrong size");
    for (int v : row) {
      if (v < 0 || v >= n) throw ContractError("multiplication table entry out of range");
    }
  }
  if (identity_ < 0 || identity_ >= n) throw ContractError("identity out of range");
}

ComponentGroup ComponentGroup::cyclic(std::vector<std::string> labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return ComponentGroup(std::move(labels), std::move(t), 0);
}

int ComponentGroup::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (mul(a, b) == identity_) return b;
  throw ModelIntegrityError("component group element without inverse");
}

int ComponentGroup::element_order(int a) const {
  int x = a;
  for (int k = 1; k <= order(); ++k) {
    if (x == identity_) return k;
    x = mul(x, a);
  }
  throw ModelIntegrityError("component group element of unbounded order");
}

std::optional<int> ComponentGroup::find(std::string_view label) const {
  for (int i = 0; i < order(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

bool ComponentGroup::is_group() const {
  const int n = order();
  for (int a = 0; a < n; ++a) {
    if (mul(identity_, a) != a || mul(a, identity_) != a) return false;
    bool has_inverse = false;
    for (int b = 0; b < n; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) has_inverse = true;
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    }
    if (!has_inverse) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ClassPoint / ComponentSpec

ClassPoint::ClassPoint(int component_index, std::initializer_list<double> angles)
    : ClassPoint(component_index, std::span<const double>(angles.begin(), angles.size())) {}

ClassPoint::ClassPoint(int component_index, std::span<const double> angles) : component(component_index) {
  if (angles.size() > kMaxRank) throw ContractError("class point rank exceeds the supported maximum");
  rank = static_cast<std::uint8_t>(angles.size());
  std::copy(angles.begin(), angles.end(), angle.begin());
}

std::vector<Interval> ComponentSpec::box() const {
  std::vector<Interval> b;
  for (int d = 0; d < rank; ++d) b.push_back({0.0, upper(kinds[d])});
  return b;
}

void ComponentSpec::fold(std::span<double> angles) const {
  for (int d = 0; d < rank; ++d) {
    switch (kinds[d]) {
      case AngleKind::circle: angles[d] = fold_circle(angles[d]); break;
      case AngleKind::half_circle: angles[d] = fold_half(angles[d]); break;
      case AngleKind::quarter: angles[d] = fold_quarter(angles[d]); break;
    }
  }
  if (ordered && rank == 2 && angles[0] < angles[1]) std::swap(angles[0], angles[1]);
}

bool ComponentSpec::in_domain(std::span<const double> angles) const {
  if (static_cast<int>(angles.size()) != rank) return false;
  for (int d = 0; d < rank; ++d) {
    const double t = angles[d];
    if (!std::isfinite(t) || t < 0.0) return false;
    if (kinds[d] == AngleKind::circle ? t >= kTwoPi : t > upper(kinds[d])) return false;
  }
  if (ordered && rank == 2 && angles[0] < angles[1]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// GroupModel

bool GroupModel::is_valid(const ClassPoint& x) const {
  if (x.component < 0 || x.component >= order()) return false;
  return component_specs[x.component].in_domain(x.angles());
}

void GroupModel::validate(const ClassPoint& x) const {
  if (x.component < 0 || x.component >= order()) {
    throw DomainError(name + ": component index " + std::to_string(x.component) + " out of range");
  }
  if (x.rank != component_specs[x.component].rank) {
    throw DomainError(name + ": class point has " + std::to_string(x.rank) + " angles, component " +
                      components.label(x.component) + " has rank " +
                      std::to_string(component_specs[x.component].rank));
  }
  if (!component_specs[x.component].in_domain(x.angles())) {
    std::ostringstream os;
    os << name << ": angles (";
    for (std::size_t i = 0; i < x.rank; ++i) os << (i ? ", " : "") << x.angle[i];
    os << ") outside the fundamental domain of component " << components.label(x.component);
    throw DomainError(os.str());
  }
}

ClassPoint GroupModel::canonical(int component, std::span<const double> raw_angles) const {
  if (component < 0 || component >= order()) throw DomainError(name + ": component index out of range");
  const ComponentSpec& spec = component_specs[component];
  if (static_cast<int>(raw_angles.size()) != spec.rank) throw DomainError(name + ": wrong number of angles");
  ClassPoint x(component, raw_angles);
  spec.fold(std::span<double>(x.angle.data(), x.rank));
  return x;
}

ClassPoint GroupModel::canonical(int component, std::initializer_list<double> raw_angles) const {
  return canonical(component, std::span<const double>(raw_angles.begin(), raw_angles.size()));
}

ClassPoint GroupModel::identity_class() const {
  const int e = components.identity();
  std::array<double, kMaxRank> zeros{};
  return ClassPoint(e, std::span<const double>(zeros.data(), component_specs[e].rank));
}

bool GroupModel::same_class(const ClassPoint& a, const ClassPoint& b, double tol) const {
  if (a.component != b.component || a.rank != b.rank) return false;
  const ComponentSpec& spec = component_specs.at(a.component);
  for (std::size_t d = 0; d < a.rank; ++d) {
    double diff = std::abs(a.angle[d] - b.angle[d]);
    if (spec.kinds[d] == AngleKind::circle) diff = std::min(diff, kTwoPi - diff);
    if (diff > tol) return false;
  }
  return true;
}

const CharacterSpec* GroupModel::find_character(std::string_view label) const {
  for (const auto& c : characters)
    if (c.label == label) return &c;
  return nullptr;
}

const CharacterSpec& GroupModel::character(std::string_view label) const {
  if (const auto* c = find_character(label)) return *c;
  throw CatalogError(name + ": no character labelled '" + std::string(label) + "'");
}

const CharacterSpec* GroupModel::sign_character() const {
  for (const auto& c : characters)
    if (c.is_sign) return &c;
  return nullptr;
}

std::vector<const CharacterSpec*> GroupModel::nontrivial_characters(int cap) const {
  std::vector<const CharacterSpec*> out;
  for (const auto& c : characters)
    if (!c.is_trivial && c.level <= cap) out.push_back(&c);
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

const std::vector<std::string>& builtin_model_names() {
  static const std::vector<std::string> names = {"U1",      "N_U1", "SU2", "U1xU1",       "U1xSU2",
                                                 "SU2xSU2", "USp4", "SO3", "O3_CANDIDATE"};
  return names;
}

ModelPtr builtin_model(std::string_view name, int char_cap) {
  if (char_cap < 0) throw ContractError("character cap must be non-negative");
  GroupModel m;
  if (name == "U1") m = model_u1(char_cap);
  else if (name == "N_U1") m = model_n_u1(char_cap);
  else if (name == "SU2") m = model_su2(char_cap);
  else if (name == "U1xU1") m = model_u1xu1(char_cap);
  else if (name == "U1xSU2") m = model_u1xsu2(char_cap);
  else if (name == "SU2xSU2") m = model_su2xsu2(char_cap);
  else if (name == "USp4") m = model_usp4(char_cap);
  else if (name == "SO3") m = model_so3(char_cap);
  else if (name == "O3_CANDIDATE") m = model_o3_candidate(char_cap);
  else throw CatalogError("unknown model '" + std::string(name) + "'; valid names: " + valid_names());
  m.char_cap = char_cap;
  return std::make_shared<const GroupModel>(std::move(m));
}

double class_density(const GroupModel& model, const ClassPoint& x) {
  model.validate(x);
  const ComponentSpec& spec = model.component_specs[x.component];
  if (spec.rank == 0) return 1.0;
  return spec.fold_multiplicity() * spec.weight(x.angles()) / spec.normalizer;
}

std::complex<double> character_value(const GroupModel& model, const CharacterSpec& chi, const ClassPoint& x) {
  if (chi.model != model.name) {
    throw ContractError("character '" + chi.label + "' of model " + chi.model + " evaluated on model " + model.name);
  }
  model.validate(x);
  return chi.eval(x);
}

double chebyshev_u(int k, double c) {
  if (k < 0) return 0.0;
  double u0 = 1.0;
  if (k == 0) return u0;
  double u1 = 2.0 * c;
  for (int j = 2; j <= k; ++j) {
    const double u2 = 2.0 * c * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

// ---------------------------------------------------------------------------
// Inclusions

std::vector<int> SubgroupInclusion::image_components() const {
  std::set<int> img;
  for (int c = 0; c < sub->order(); ++c) {
    std::array<double, kMaxRank> zeros{};
    const ClassPoint y(c, std::span<const double>(zeros.data(), sub->rank(c)));
    img.insert(embed(y).component);
  }
  return {img.begin(), img.end()};
}

bool SubgroupInclusion::in_image(const ClassPoint& x) const {
  const auto img = image_components();
  return std::find(img.begin(), img.end(), x.component) != img.end();
}

SubgroupInclusion make_inclusion(std::string name, ModelPtr sub, ModelPtr amb, std::vector<ClassAction> coset_reps,
                                 std::function<ClassPoint(const ClassPoint&)> embed,
                                 std::function<std::optional<ClassPoint>(const ClassPoint&)> lift) {
  if (!sub || !amb) throw ContractError("inclusion requires both models");
  if (coset_reps.empty()) throw ContractError("inclusion needs at least the identity coset representative");
  SubgroupInclusion incl;
  incl.name = std::move(name);
  incl.sub = std::move(sub);
  incl.amb = std::move(amb);
  incl.index = static_cast<int>(coset_reps.size());
  incl.coset_reps = std::move(coset_reps);
  incl.embed = std::move(embed);
  incl.lift = std::move(lift);

  const auto grid = halton_grid_all(*incl.sub, 64);
  for (const auto& y : grid) {
    if (!incl.sub->same_class(incl.coset_reps.front()(y), y)) {
      throw ContractError(incl.name + ": first coset representative must act as the identity");
    }
    for (const auto& act : incl.coset_reps) {
      if (!incl.sub->is_valid(act(y))) incl.normal = false;
    }
  }
  return incl;
}

SubgroupInclusion identity_inclusion(ModelPtr model) {
  const std::string n = model->name + "<" + model->name;
  return make_inclusion(
      n, model, model, {identity_action}, identity_action,
      [](const ClassPoint& x) { return std::optional<ClassPoint>(x); });
}

SubgroupInclusion builtin_inclusion(std::string_view sub, std::string_view amb, int char_cap) {
  if (sub == amb) return identity_inclusion(builtin_model(sub, char_cap));
  if (sub == "U1" && amb == "N_U1") {
    ModelPtr g0 = builtin_model("U1", char_cap);
    ModelPtr g = builtin_model("N_U1", char_cap);
    ClassAction reflect = [g0](const ClassPoint& y) { return g0->canonical(y.component, {-y[0]}); };
    return make_inclusion(
        "U1<N_U1", g0, g, {identity_action, reflect},
        [g](const ClassPoint& y) { return g->canonical(0, {y[0]}); },
        [](const ClassPoint& x) -> std::optional<ClassPoint> {
          if (x.component != 0) return std::nullopt;
          return ClassPoint(0, {x[0]});
        });
  }
  if (sub == "SO3" && amb == "O3_CANDIDATE") {
    ModelPtr g0 = builtin_model("SO3", char_cap);
    ModelPtr g = builtin_model("O3_CANDIDATE", char_cap);
    // -Id is central, so conjugation by it fixes every class.
    return make_inclusion(
        "SO3<O3_CANDIDATE", g0, g, {identity_action, identity_action},
        [](const ClassPoint& y) { return ClassPoint(0, {y[0]}); },
        [](const ClassPoint& x) -> std::optional<ClassPoint> {
          if (x.component != 0) return std::nullopt;
          return ClassPoint(0, {x[0]});
        });
  }
  throw CatalogError("no built-in inclusion " + std::string(sub) + " < " + std::string(amb) +
                     "; available: U1<N_U1, SO3<O3_CANDIDATE, G<G");
}

std::vector<SubgroupInclusion> builtin_inclusions(int char_cap) {
  std::vector<SubgroupInclusion> all;
  for (const auto& n : builtin_model_names()) all.push_back(builtin_inclusion(n, n, char_cap));
  all.push_back(builtin_inclusion("U1", "N_U1", char_cap));
  all.push_back(builtin_inclusion("SO3", "O3_CANDIDATE", char_cap));
  return all;
}

std::vector<SubgroupInclusion> cyclic_intermediates(const ModelPtr& model) {
  std::vector<SubgroupInclusion> out;
  if (model->name == "N_U1") out.push_back(builtin_inclusion("U1", "N_U1", model->char_cap));
  if (model->name == "O3_CANDIDATE") out.push_back(builtin_inclusion("SO3", "O3_CANDIDATE", model->char_cap));
  out.push_back(identity_inclusion(model));
  return out;
}

ClassPoint fuse_class(const SubgroupInclusion& incl, const ClassPoint& y) {
  incl.sub->validate(y);
  return incl.embed(y);
}

std::vector<ClassPoint> fusion_fiber(const SubgroupInclusion& incl, const ClassPoint& x) {
  incl.amb->validate(x);
  const std::optional<ClassPoint> y = incl.lift(x);
  if (!y) throw NotInImageError(incl.name + ": class is not in the image of the class map");
  std::vector<ClassPoint> fiber;
  for (const auto& act : incl.coset_reps) {
    const ClassPoint z = act(*y);
    const ClassPoint c = incl.sub->canonical(z.component, z.angles());
    const bool seen = std::any_of(fiber.begin(), fiber.end(),
                                  [&](const ClassPoint& w) { return incl.sub->same_class(w, c); });
    if (!seen) fiber.push_back(c);
  }
  return fiber;
}

}  // namespace satotate
