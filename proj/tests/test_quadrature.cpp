#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "satotate/quadrature.hpp"
#include "satotate/sampling.hpp"

using namespace satotate;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre is exact on polynomials of degree 2n-1") {
  const QuadratureRule r = gauss_legendre(8);
  for (int k = 0; k <= 15; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-14));
  }
  CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("composite rule rounds up to whole panels and covers the interval") {
  const QuadratureRule r = composite_gauss_legendre(0.0, oracle::pi, 100);
  CHECK(r.size() == 112);
  CHECK(std::accumulate(r.weights.begin(), r.weights.end(), 0.0) == doctest::Approx(oracle::pi).epsilon(1e-14));
  for (double x : r.nodes) {
    CHECK(x > 0.0);
    CHECK(x < oracle::pi);
  }
}

TEST_CASE("composite rule against Simpson on smooth integrands") {
  const auto f = [](double t) { return std::exp(std::sin(3.0 * t)) * std::cos(t) * std::cos(t); };
  const QuadratureRule r = composite_gauss_legendre(0.0, 2.0 * oracle::pi, 256);
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  CHECK(s == doctest::Approx(oracle::simpson(f, 0.0, 2.0 * oracle::pi)).epsilon(1e-10));
}

TEST_CASE("integrate_box in 0, 1 and 2 dimensions") {
  CHECK(integrate_box({}, 64, [](std::span<const double>) { return 3.5; }) == 3.5);
  const Interval one[1] = {{0.0, oracle::pi}};
  CHECK(integrate_box(one, 64, [](std::span<const double> x) { return std::sin(x[0]) * std::sin(x[0]); }) ==
        doctest::Approx(oracle::pi / 2).epsilon(1e-14));
  const Interval two[2] = {{0.0, 1.0}, {0.0, 2.0}};
  CHECK(integrate_box(two, 32, [](std::span<const double> x) { return x[0] * x[1] * x[1]; }) ==
        doctest::Approx(0.5 * 8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("pairwise summation is order-deterministic and accurate") {
  std::vector<double> v(100000, 0.1);
  const double s = pairwise_sum(v);
  CHECK(s == doctest::Approx(10000.0).epsilon(1e-13));
  CHECK(pairwise_sum(v) == s);
}

TEST_CASE("Halton radical inverse") {
  CHECK(halton(1, 2) == 0.5);
  CHECK(halton(2, 2) == 0.25);
  CHECK(halton(3, 2) == 0.75);
  CHECK(halton(1, 3) == doctest::Approx(1.0 / 3.0));
  CHECK(halton(4, 3) == doctest::Approx(4.0 / 9.0));
}

TEST_CASE("UniformSource is reproducible and lies in [0, 1)") {
  UniformSource a(7), b(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.next();
    CHECK(x == b.next());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

}  // TEST_SUITE
