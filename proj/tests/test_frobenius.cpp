#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "satotate/errors.hpp"
#include "satotate/frobenius.hpp"

using namespace satotate;
using oracle::pi;

namespace {

// Ten fixed nonsingular curves.
const std::pair<std::int64_t, std::int64_t> kCurves[] = {{1, 1}, {0, 1}, {-1, 0}, {2, 3},  {-3, 5},
                                                         {7, -2}, {0, 7}, {5, 0},  {-11, 13}, {17, 19}};

}  // namespace

TEST_SUITE("frobenius") {

TEST_CASE("prime sieve") {
  CHECK(prime_sieve(12) == std::vector<std::int64_t>{5, 7, 11});
  CHECK(prime_sieve(30) == std::vector<std::int64_t>{5, 7, 11, 13, 17, 19, 23, 29});
  CHECK_THROWS(prime_sieve(4));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("point counts and traces") {
  CHECK(count_points(make_curve(1, 1), 5) == 9);
  CHECK(count_points(make_curve(0, 1), 5) == 6);
  CHECK_THROWS_AS(count_points(make_curve(0, 1), 3), ContractError);
  CHECK(trace_of_frobenius(make_curve(1, 1), 5) == -3);
  CHECK(trace_of_frobenius(make_curve(0, 1), 5) == 0);
  const std::int64_t a7 = trace_of_frobenius(make_curve(1, 1), 7);
  CHECK(a7 == 7 + 1 - oracle::brute_count(1, 1, 7));
  CHECK(std::abs(a7) <= 5);
  CHECK_THROWS_AS(count_points(make_curve(1, 1), 31), BadReductionError);
}

TEST_CASE("count_points matches full enumeration on ten curves") {
  for (const auto& [a, b] : kCurves) {
    const CurveSpec c = make_curve(a, b);
    for (std::int64_t p : prime_sieve(200)) {
      if (!has_good_reduction(c, p)) continue;
      CAPTURE(a);
      CAPTURE(b);
      CAPTURE(p);
      CHECK(count_points(c, p) == oracle::brute_count(a, b, p));
    }
  }
}

TEST_CASE("singular curves and discriminants") {
  CHECK(is_singular(CurveSpec{0, 0, ""}));
  CHECK(is_singular(CurveSpec{-3, 2, ""}));
  CHECK_THROWS_AS(make_curve(0, 0), ContractError);
  CHECK(discriminant_core(make_curve(1, 1)) == 31);
}

TEST_CASE("generation skips bad primes and is independent of the thread count") {
  const GenerationResult g = generate_ap(make_curve(1, 1), 100);
  CHECK(g.rows.size() == 22);
  CHECK(g.skipped == std::vector<std::int64_t>{31});
  CHECK(generate_ap(make_curve(0, 1), 20).rows.size() == 6);
  const GenerationResult g1 = generate_ap(make_curve(2, 3), 5000, 1);
  const GenerationResult g4 = generate_ap(make_curve(2, 3), 5000, 4);
  CHECK(g1.rows == g4.rows);
  CHECK(g1.skipped == g4.skipped);
}

TEST_CASE("CM curve has a_p = 0 exactly at p = 2 mod 3") {
  for (const auto& r : generate_ap(make_curve(0, 1), 10000).rows) {
    CAPTURE(r.p);
    CHECK((r.ap == 0) == (r.p % 3 == 2));
  }
}

TEST_CASE("Hasse bound") {
  CHECK(within_hasse(4, 5));
  CHECK_FALSE(within_hasse(5, 5));
  CHECK(within_hasse(-2 * 3, 9));
  for (const auto& [a, b] : kCurves)
    for (const auto& r : generate_ap(make_curve(a, b), 20000).rows) CHECK(within_hasse(r.ap, r.p));
}

TEST_CASE("normalized classes") {
  const auto su2 = builtin_model("SU2");
  const auto nu1 = builtin_model("N_U1");
  CHECK(normalized_class(-3, 5, *su2)[0] == doctest::Approx(std::acos(-3 / (2 * std::sqrt(5.0)))));
  CHECK(normalized_class(-3, 5, *su2)[0] == doctest::Approx(2.3062).epsilon(1e-4));
  CHECK(normalized_class(0, 5, *su2)[0] == doctest::Approx(pi / 2));
  CHECK(normalized_class(0, 5, *nu1).component == 1);
  CHECK(normalized_class(2, 5, *nu1).component == 0);
  CHECK_THROWS_AS(normalized_class(1, 5, *builtin_model("USp4")), UnsupportedModelError);
  double prev = 10.0;
  for (int ap = -44; ap <= 44; ++ap) {
    const double t = normalized_class(ap, 499, *su2)[0];
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("symmetric square classes") {
  const auto su2 = builtin_model("SU2");
  const auto so3 = builtin_model("SO3");
  const auto o3 = builtin_model("O3_CANDIDATE");
  CHECK(so3->trace(symmetric_square_class(ClassPoint(0, {0.0}), *so3)) == doctest::Approx(3.0));
  CHECK(so3->trace(symmetric_square_class(ClassPoint(0, {pi / 2}), *so3)) == doctest::Approx(-1.0));
  for (double t = 0.0; t <= pi; t += 0.01) {
    const ClassPoint x = symmetric_square_class(ClassPoint(0, {t}), *o3);
    CHECK(o3->character("D_1").eval(x).real() == doctest::Approx(4 * std::cos(t) * std::cos(t) - 1).epsilon(1e-12));
    CHECK(o3->sign_character()->eval(x).real() == 1.0);
  }
  CHECK_THROWS(symmetric_square_class(ClassPoint(0, {1.0}), *su2));
}

TEST_CASE("CM detection") {
  CHECK(cm_detect(std::span<const ApRecord>(generate_ap(make_curve(0, 1), 10000).rows)));
  CHECK_FALSE(cm_detect(std::span<const ApRecord>(generate_ap(make_curve(1, 1), 10000).rows)));
  const auto rows = generate_ap(make_curve(0, 1), 2100).rows;
  REQUIRE(rows.size() < 500);
  CHECK_THROWS_AS(cm_detect(std::span<const ApRecord>(rows)), IndeterminateError);
}

TEST_CASE("CSV round trip and errors") {
  const std::string text = "p,ap\n5,-3\n7,3\n11,-2\n";
  std::istringstream in(text);
  const auto rows = read_ap_csv(in);
  REQUIRE(rows.size() == 3);
  std::ostringstream out;
  write_ap_csv(out, rows);
  CHECK(out.str() == text);

  std::istringstream commented("# source: test\np,ap\n\n5,-3\n# note\n7,3\n");
  CHECK(read_ap_csv(commented).size() == 2);

  std::istringstream neg(text);
  CHECK(read_ap_csv(neg, true)[0].ap == 3);

  auto line_of = [](const std::string& s) {
    std::istringstream bad(s);
    try {
      read_ap_csv(bad);
    } catch (const CsvError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("p,ap\n5,1\n7,x\n") == 3);
  CHECK(line_of("p,ap\n5,1\n8,1\n") == 3);
  CHECK(line_of("q,ap\n") == 1);
  CHECK(line_of("p,ap\n5\n") == 2);
}

}  // TEST_SUITE
