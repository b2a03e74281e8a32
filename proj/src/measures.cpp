#include "satotate/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "satotate/errors.hpp"
#include "satotate/sampling.hpp"

namespace satotate {

namespace {

using Complex = std::complex<double>;

void require_model(const std::string& expected, const std::string& got, const char* what) {
  if (expected != got) {
    throw ContractError(std::string(what) + ": function on model " + got + " used with model " + expected);
  }
}

/// Subgroup image C of H in the component group, checked to be a cyclic subgroup.
std::vector<int> cyclic_image(const ComponentGroup& q, const SubgroupInclusion& incl) {
  const std::vector<int> img = incl.image_components();
  const std::set<int> s(img.begin(), img.end());
  if (!s.count(q.identity())) throw ContractError(incl.name + ": image misses the identity component");
  for (int a : img)
    for (int b : img)
      if (!s.count(q.mul(a, b))) throw ContractError(incl.name + ": image is not a subgroup of the component group");
  const bool cyclic = std::any_of(img.begin(), img.end(),
                                  [&](int g) { return q.element_order(g) == static_cast<int>(img.size()); });
  if (!cyclic) throw ContractError(incl.name + ": image is not a cyclic subgroup of the component group");
  return img;
}

/// Permutation character Ind_C^Q(1)(g) = #{cosets sC fixed by g}.
Rational permutation_character(const ComponentGroup& q, const std::vector<int>& subgroup, int g) {
  const std::set<int> c(subgroup.begin(), subgroup.end());
  std::int64_t hits = 0;
  for (int s = 0; s < q.order(); ++s) {
    if (c.count(q.mul(q.mul(q.inverse(s), g), s))) ++hits;
  }
  return Rational(hits, static_cast<std::int64_t>(subgroup.size()));
}

/// Any solution of A a = b over the rationals (free variables set to zero).
std::optional<std::vector<Rational>> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rational inv = Rational(1) / a[r][c];
    for (auto& v : a[r]) v = v * inv;
    b[r] = b[r] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace

ClassFunction as_class_function(const CharacterSpec& chi) { return {chi.model, chi.eval}; }

int nodes_for_rank(int rank, int nodes) { return rank >= 2 ? std::min(nodes, kDefaultNodes2D) : nodes; }

std::shared_ptr<const std::vector<MeasureNode>> measure_nodes(const GroupModel& model, int component, int nodes) {
  if (nodes < 16) throw ContractError("integration needs at least 16 nodes per angle");
  const ComponentSpec& spec = model.component_specs.at(component);
  const int n = nodes_for_rank(spec.rank, nodes);
  std::unique_lock<std::mutex> lock;
  if (spec.node_cache) {
    lock = std::unique_lock<std::mutex>(spec.node_cache->mutex);
    if (auto it = spec.node_cache->tables.find(n); it != spec.node_cache->tables.end()) return it->second;
  }
  auto table = std::make_shared<std::vector<MeasureNode>>();
  if (spec.rank == 0) {
    table->push_back({model.canonical(component, std::span<const double>{}), 1.0});
  } else {
    const std::vector<Interval> box = spec.box();
    const QuadratureRule r0 = composite_gauss_legendre(box[0].lo, box[0].hi, n);
    const QuadratureRule r1 = spec.rank == 2 ? composite_gauss_legendre(box[1].lo, box[1].hi, n) : QuadratureRule{{0.0}, {1.0}};
    table->reserve(r0.size() * r1.size());
    for (std::size_t i = 0; i < r0.size(); ++i) {
      for (std::size_t j = 0; j < r1.size(); ++j) {
        const double a[2] = {r0.nodes[i], r1.nodes[j]};
        const std::span<const double> angles(a, static_cast<std::size_t>(spec.rank));
        ClassPoint x(component, angles);
        spec.fold(std::span<double>(x.angle.data(), x.rank));
        table->push_back({x, r0.weights[i] * r1.weights[j] * spec.weight(angles) / spec.normalizer});
      }
    }
  }
  if (spec.node_cache) spec.node_cache->tables.emplace(n, table);
  return table;
}

std::complex<double> component_integral(const GroupModel& model, int component, const ClassFunction& f, int nodes) {
  require_model(model.name, f.model, "component_integral");
  const auto table = measure_nodes(model, component, nodes);
  std::vector<Complex> terms(table->size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = f((*table)[i].point) * (*table)[i].weight;
  return pairwise_sum(terms);
}

std::complex<double> integrate_class_function(const GroupModel& model, const ClassFunction& f, int nodes) {
  Complex total{};
  for (int c = 0; c < model.order(); ++c) total += component_integral(model, c, f, nodes);
  return total / static_cast<double>(model.order());
}

std::complex<double> pushforward_integrate(const SubgroupInclusion& incl, const ClassFunction& f, int nodes) {
  require_model(incl.amb->name, f.model, "pushforward_integrate");
  const ClassFunction pulled{incl.sub->name, [&](const ClassPoint& y) { return f(incl.embed(y)); }};
  return integrate_class_function(*incl.sub, pulled, nodes);
}

ClassFunction induce_character(const SubgroupInclusion& incl, const CharacterSpec& chi0) {
  require_model(incl.sub->name, chi0.model, "induce_character");
  if (!incl.normal) {
    throw UnsupportedInclusionError(incl.name + ": induction is only supported from open normal subgroups");
  }
  auto eval = [incl, inner = chi0.eval](const ClassPoint& x) -> Complex {
    const std::optional<ClassPoint> y = incl.lift(x);
    if (!y) return {0.0, 0.0};
    Complex s{};
    for (const auto& act : incl.coset_reps) s += inner(act(*y));
    return s;
  };
  return {incl.amb->name, std::move(eval)};
}

namespace {

/// Per-character sums over a node sweep: plain sums within blocks of 64
/// nodes, pairwise over the block sums.
class BlockSums {
 public:
  explicit BlockSums(std::size_t k) : cur_(k), blocks_(k) {}
  Complex& operator[](std::size_t i) { return cur_[i]; }
  void next_node() {
    if (++count_ % 64 == 0) flush();
  }
  std::vector<Complex> totals() {
    flush();
    std::vector<Complex> out(cur_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = pairwise_sum(blocks_[i]);
    return out;
  }

 private:
  void flush() {
    for (std::size_t i = 0; i < cur_.size(); ++i) {
      blocks_[i].push_back(cur_[i]);
      cur_[i] = Complex{};
    }
  }
  std::vector<Complex> cur_;
  std::vector<std::vector<Complex>> blocks_;
  std::size_t count_ = 0;
};

/// Character values at the few distinct points met while processing one node.
/// Points are compared exactly, so reuse never changes a result.
class NodeMemo {
 public:
  explicit NodeMemo(std::span<const CharacterSpec> chars) : chars_(chars) {}
  void reset() { used_ = 0; }
  const std::vector<Complex>& at(const ClassPoint& z) {
    for (std::size_t k = 0; k < used_; ++k)
      if (pts_[k].component == z.component && pts_[k].rank == z.rank && pts_[k].angle == z.angle) return vals_[k];
    if (used_ == pts_.size()) {
      pts_.emplace_back();
      vals_.emplace_back(chars_.size());
    }
    pts_[used_] = z;
    for (std::size_t i = 0; i < chars_.size(); ++i) vals_[used_][i] = chars_[i].eval(z);
    return vals_[used_++];
  }

 private:
  std::span<const CharacterSpec> chars_;
  std::vector<ClassPoint> pts_;
  std::vector<std::vector<Complex>> vals_;
  std::size_t used_ = 0;
};

/// acc[i] += w * Ind(chi_i)(x).
void add_induced(const SubgroupInclusion& incl, const ClassPoint& x, double w, NodeMemo& memo, BlockSums& acc,
                 std::size_t k) {
  const std::optional<ClassPoint> y = incl.lift(x);
  if (!y) return;
  for (const auto& act : incl.coset_reps) {
    const auto& v = memo.at(act(*y));
    for (std::size_t i = 0; i < k; ++i) acc[i] += v[i] * w;
  }
}

std::vector<Complex> finish(std::vector<Complex> total, BlockSums& acc, int order) {
  const auto t = acc.totals();
  for (std::size_t i = 0; i < total.size(); ++i) total[i] += t[i] / static_cast<double>(order);
  return total;
}

}  // namespace

std::vector<InductionCheck> check_induction_identities(const SubgroupInclusion& incl,
                                                       std::span<const CharacterSpec> chars, int nodes, double tol) {
  for (const auto& chi0 : chars) induce_character(incl, chi0);  // model and normality checks
  const std::size_t k = chars.size();
  const GroupModel& sub = *incl.sub;
  const GroupModel& amb = *incl.amb;
  const bool same_model = incl.sub.get() == incl.amb.get();
  NodeMemo memo(chars);

  // Over G0: int chi0 dmu0 and int Ind(chi0) d j_* mu0; over G as well when G = G0.
  std::vector<Complex> rhs_haar(k), lhs_push(k), lhs_haar(k);
  for (int c = 0; c < sub.order(); ++c) {
    BlockSums rhs(k), push(k), haar(k);
    for (const auto& node : *measure_nodes(sub, c, nodes)) {
      memo.reset();
      const auto& v = memo.at(node.point);
      for (std::size_t i = 0; i < k; ++i) rhs[i] += v[i] * node.weight;
      add_induced(incl, incl.embed(node.point), node.weight, memo, push, k);
      if (same_model) add_induced(incl, node.point, node.weight, memo, haar, k);
      rhs.next_node();
      push.next_node();
      haar.next_node();
    }
    rhs_haar = finish(std::move(rhs_haar), rhs, sub.order());
    lhs_push = finish(std::move(lhs_push), push, sub.order());
    if (same_model) lhs_haar = finish(std::move(lhs_haar), haar, amb.order());
  }
  if (!same_model) {
    for (int c = 0; c < amb.order(); ++c) {
      BlockSums haar(k);
      for (const auto& node : *measure_nodes(amb, c, nodes)) {
        memo.reset();
        add_induced(incl, node.point, node.weight, memo, haar, k);
        haar.next_node();
      }
      lhs_haar = finish(std::move(lhs_haar), haar, amb.order());
    }
  }

  std::vector<InductionCheck> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    InductionCheck& r = out[i];
    r.lhs_haar = lhs_haar[i];
    r.rhs_haar = rhs_haar[i];
    r.lhs_push = lhs_push[i];
    r.rhs_push = static_cast<double>(incl.index) * r.rhs_haar;
    r.pass = std::abs(r.lhs_haar - r.rhs_haar) <= tol && std::abs(r.lhs_push - r.rhs_push) <= tol;
  }
  return out;
}

InductionCheck check_induction_identities(const SubgroupInclusion& incl, const CharacterSpec& chi0, int nodes,
                                          double tol) {
  return check_induction_identities(incl, std::span<const CharacterSpec>(&chi0, 1), nodes, tol).front();
}

std::vector<std::vector<std::complex<double>>> gram_matrix(const GroupModel& model,
                                                           std::span<const CharacterSpec> chars, int nodes) {
  const std::size_t k = chars.size();
  std::vector<std::vector<Complex>> g(k, std::vector<Complex>(k));
  std::vector<Complex> vals(k);
  for (int c = 0; c < model.order(); ++c) {
    std::vector<std::vector<Complex>> acc(k, std::vector<Complex>(k));
    auto accumulate = [&](const ClassPoint& x, double w) {
      for (std::size_t i = 0; i < k; ++i) vals[i] = chars[i].eval(x);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) acc[i][j] += w * vals[i] * std::conj(vals[j]);
    };
    for (const auto& node : *measure_nodes(model, c, nodes)) accumulate(node.point, node.weight);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) g[i][j] += acc[i][j] / static_cast<double>(model.order());
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < i; ++j) g[i][j] = std::conj(g[j][i]);
  return g;
}

std::complex<double> VirtualCharacter::evaluate(const ClassPoint& x) const {
  Complex s{};
  for (const auto& t : terms) {
    s += t.coefficient.to_double() * induce_character(*t.source, t.inner)(x);
  }
  return s;
}

VirtualCharacter artin_decompose(const GroupModel& model, const CharacterSpec& chi,
                                 std::span<const SubgroupInclusion> intermediates, double tol) {
  if (chi.model != model.name) throw ContractError("artin_decompose: character belongs to model " + chi.model);
  if (intermediates.empty()) throw ContractError("artin_decompose: no intermediate subgroups supplied");
  const ComponentGroup& q = model.components;
  const int n_inter = static_cast<int>(intermediates.size());

  std::vector<std::vector<int>> images;
  for (const auto& h : intermediates) {
    if (h.amb->name != model.name) throw ContractError(h.name + " is not a subgroup of " + model.name);
    images.push_back(cyclic_image(q, h));
  }

  // Components on which chi does not vanish identically.
  std::vector<int> support;
  for (int c = 0; c < q.order(); ++c) {
    double m = 0.0;
    for (const auto& x : halton_grid(model, c)) m = std::max(m, std::abs(chi.eval(x)));
    if (m > 1e-12) support.push_back(c);
  }

  // Artin relation on the finite quotient: sum_i a_i Ind_{C_i}^Q 1 == 1 on the support.
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> rhs;
  for (int g : support) {
    std::vector<Rational> row;
    for (int i = 0; i < n_inter; ++i) row.push_back(permutation_character(q, images[i], g));
    a.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  const auto coeffs = solve_rational(a, rhs);
  if (!coeffs) {
    throw DecompositionFailedError(model.name + ": no rational Artin relation over the supplied intermediates for '" +
                                       chi.label + "'",
                                   std::numeric_limits<double>::infinity());
  }

  // Lift: chi * Ind_H(1) = Ind_H(Res_H chi); then split Res_H chi into listed irreducibles of H.
  VirtualCharacter out;
  out.model = model.name;
  for (int i = 0; i < n_inter; ++i) {
    const Rational ai = (*coeffs)[i];
    if (ai.is_zero()) continue;
    auto source = std::make_shared<const SubgroupInclusion>(intermediates[i]);
    const GroupModel& h = *source->sub;
    const ClassFunction res{h.name, [src = source, f = chi.eval](const ClassPoint& y) { return f(src->embed(y)); }};

    std::vector<std::pair<Rational, const CharacterSpec*>> parts;
    bool integral = true;
    for (const auto& psi : h.characters) {
      const ClassFunction prod{h.name, [&](const ClassPoint& y) { return res(y) * std::conj(psi.eval(y)); }};
      const Complex m = integrate_class_function(h, prod);
      const double mr = std::round(m.real());
      if (std::abs(m - Complex(mr, 0.0)) > 1e-6) {
        integral = false;
        break;
      }
      if (mr != 0.0) parts.emplace_back(Rational(static_cast<std::int64_t>(mr)), &psi);
    }
    if (integral) {
      double err = 0.0;
      for (const auto& y : halton_grid_all(h)) {
        Complex s{};
        for (const auto& [m, psi] : parts) s += m.to_double() * psi->eval(y);
        err = std::max(err, std::abs(s - res(y)));
      }
      integral = err <= tol;
    }
    if (integral) {
      for (const auto& [m, psi] : parts) out.terms.push_back({ai * m, source, *psi});
    } else {
      CharacterSpec r;
      r.label = "Res(" + chi.label + ")";
      r.dimension = chi.dimension;
      r.eval = res.eval;
      r.model = h.name;
      r.level = chi.level;
      out.terms.push_back({ai, source, r});
    }
  }

  // Conjugate inner characters induce the same character: merge them.
  const std::size_t check_points = 200;
  for (std::size_t i = 0; i < out.terms.size(); ++i) {
    for (std::size_t j = i + 1; j < out.terms.size();) {
      const auto& ti = out.terms[i];
      const auto& tj = out.terms[j];
      bool conj = false;
      if (ti.source->name == tj.source->name) {
        const auto grid = halton_grid_all(*ti.source->sub, static_cast<int>(check_points));
        for (const auto& act : ti.source->coset_reps) {
          const bool match = std::all_of(grid.begin(), grid.end(), [&](const ClassPoint& y) {
            return std::abs(tj.inner.eval(act(y)) - ti.inner.eval(y)) <= tol;
          });
          if (match) {
            conj = true;
            break;
          }
        }
      }
      if (conj) {
        out.terms[i].coefficient += tj.coefficient;
        out.terms.erase(out.terms.begin() + static_cast<std::ptrdiff_t>(j));
      } else {
        ++j;
      }
    }
  }
  std::erase_if(out.terms, [](const VirtualTerm& t) { return t.coefficient.is_zero(); });

  double residual = 0.0;
  for (const auto& x : halton_grid_all(model)) residual = std::max(residual, std::abs(out.evaluate(x) - chi.eval(x)));
  out.residual = residual;
  if (!(residual <= tol)) {
    throw DecompositionFailedError(model.name + ": decomposition of '" + chi.label + "' has residual " +
                                       std::to_string(residual),
                                   residual);
  }
  return out;
}

}  // namespace satotate
