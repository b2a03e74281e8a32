#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

namespace satotate {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with `panel`-point panels; the total
/// node count is `nodes` rounded up to a multiple of `panel`.
QuadratureRule composite_gauss_legendre(double a, double b, int nodes, int panel = 16);

/// Recursive pairwise summation; the result depends only on the input order.
template <class T>
T pairwise_sum(std::span<const T> v) {
  constexpr std::size_t kBlock = 64;
  if (v.size() <= kBlock) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v));
}

/// Tensor-product composite Gauss-Legendre over a box of dimension 0, 1 or 2.
/// `f` receives the node coordinates as a span; a 0-dimensional box is a point.
template <class F>
auto integrate_box(std::span<const Interval> box, int nodes_per_angle, F&& f)
    -> std::invoke_result_t<F&, std::span<const double>> {
  using T = std::invoke_result_t<F&, std::span<const double>>;
  if (box.empty()) return f(std::span<const double>{});
  std::vector<T> terms;
  if (box.size() == 1) {
    const QuadratureRule r = composite_gauss_legendre(box[0].lo, box[0].hi, nodes_per_angle);
    terms.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double x[1] = {r.nodes[i]};
      terms.push_back(T(r.weights[i]) * f(std::span<const double>(x, 1)));
    }
    return pairwise_sum(terms);
  }
  const QuadratureRule r0 = composite_gauss_legendre(box[0].lo, box[0].hi, nodes_per_angle);
  const QuadratureRule r1 = composite_gauss_legendre(box[1].lo, box[1].hi, nodes_per_angle);
  terms.reserve(r0.size() * r1.size());
  for (std::size_t i = 0; i < r0.size(); ++i) {
    for (std::size_t j = 0; j < r1.size(); ++j) {
      const double x[2] = {r0.nodes[i], r1.nodes[j]};
      terms.push_back(T(r0.weights[i] * r1.weights[j]) * f(std::span<const double>(x, 2)));
    }
  }
  return pairwise_sum(terms);
}

}  // namespace satotate
