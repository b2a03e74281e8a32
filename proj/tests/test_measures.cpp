#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "satotate/errors.hpp"
#include "satotate/measures.hpp"
#include "satotate/sampling.hpp"

using namespace satotate;
using oracle::pi;

namespace {

ClassFunction constant(const GroupModel& m, double v) {
  return {m.name, [v](const ClassPoint&) { return std::complex<double>(v, 0.0); }};
}

}  // namespace

TEST_SUITE("measures") {

TEST_CASE("Haar integrals of simple class functions") {
  const auto su2 = builtin_model("SU2");
  CHECK(integrate_class_function(*su2, constant(*su2, 1.0)).real() == doctest::Approx(1.0).epsilon(1e-12));
  const ClassFunction tr2{su2->name, [](const ClassPoint& x) { return std::complex<double>(4 * std::cos(x[0]) * std::cos(x[0]), 0); }};
  CHECK(integrate_class_function(*su2, tr2).real() == doctest::Approx(1.0).epsilon(1e-12));
  // Independent check of the second moment: (2/pi) int 4cos^2 sin^2.
  CHECK(oracle::simpson([](double t) { return 2 / pi * 4 * std::pow(std::cos(t) * std::sin(t), 2); }, 0, pi) ==
        doctest::Approx(1.0).epsilon(1e-10));

  const auto nu1 = builtin_model("N_U1");
  CHECK(std::abs(integrate_class_function(*nu1, as_class_function(*nu1->sign_character()))) < 1e-14);
  CHECK_THROWS_AS(component_integral(*su2, 0, constant(*su2, 1.0), 8), ContractError);
}

TEST_CASE("pushforward integrals on U1 < N_U1") {
  const SubgroupInclusion incl = builtin_inclusion("U1", "N_U1");
  const auto& nu1 = *incl.amb;
  CHECK(pushforward_integrate(incl, constant(nu1, 1.0)).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pushforward_integrate(incl, as_class_function(*nu1.sign_character())).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
  const ClassFunction ind = induce_character(incl, incl.sub->character("z^1"));
  CHECK(std::abs(pushforward_integrate(incl, ind)) < 1e-12);
}

TEST_CASE("pushforward is bitwise the sub-model integral of f composed with the class map") {
  for (const auto& incl : builtin_inclusions()) {
    CAPTURE(incl.name);
    for (const auto& chi : incl.amb->characters) {
      const ClassFunction f = as_class_function(chi);
      const ClassFunction pulled{incl.sub->name, [&](const ClassPoint& y) { return f(incl.embed(y)); }};
      const int nodes = 256;
      CHECK(pushforward_integrate(incl, f, nodes) == integrate_class_function(*incl.sub, pulled, nodes));
    }
  }
}

TEST_CASE("induced characters on U1 < N_U1") {
  const SubgroupInclusion incl = builtin_inclusion("U1", "N_U1");
  const ClassFunction ind = induce_character(incl, incl.sub->character("z^1"));
  for (double t : {0.3, 1.1, 2.5}) {
    CHECK(ind(ClassPoint(0, {t})).real() == doctest::Approx(2 * std::cos(t)).epsilon(1e-14));
    CHECK(std::abs(ind(ClassPoint(0, {t})).imag()) < 1e-14);
  }
  CHECK(std::abs(ind(ClassPoint(1, {}))) == 0.0);
  const ClassFunction ind1 = induce_character(incl, incl.sub->character("1"));
  CHECK(ind1(ClassPoint(0, {0.7})).real() == 2.0);
}

TEST_CASE("induced class functions vanish off the image on a full grid") {
  for (const auto& incl : builtin_inclusions()) {
    const auto image = incl.image_components();
    for (int c = 0; c < incl.amb->order(); ++c) {
      if (std::find(image.begin(), image.end(), c) != image.end()) continue;
      for (const auto& chi0 : incl.sub->characters) {
        const ClassFunction ind = induce_character(incl, chi0);
        for (const auto& x : halton_grid(*incl.amb, c)) CHECK(ind(x) == std::complex<double>(0.0, 0.0));
      }
    }
  }
}

TEST_CASE("induction identity values") {
  const SubgroupInclusion incl = builtin_inclusion("U1", "N_U1");
  const InductionCheck a = check_induction_identities(incl, incl.sub->character("z^1"));
  CHECK(a.pass);
  for (auto v : {a.lhs_haar, a.rhs_haar, a.lhs_push, a.rhs_push}) CHECK(std::abs(v) < 1e-12);
  const InductionCheck b = check_induction_identities(incl, incl.sub->character("1"));
  CHECK(b.pass);
  CHECK(b.lhs_haar.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.rhs_haar.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.lhs_push.real() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(b.rhs_push.real() == doctest::Approx(2.0).epsilon(1e-12));
  const SubgroupInclusion id = builtin_inclusion("SU2", "SU2");
  const InductionCheck c = check_induction_identities(id, id.sub->character("sym^1"));
  CHECK(c.pass);
  CHECK(std::abs(c.lhs_haar) < 1e-12);
}

TEST_CASE("both induction identities on every built-in pair") {
  for (const auto& incl : builtin_inclusions()) {
    for (const auto& chi0 : incl.sub->characters) {
      CAPTURE(incl.name);
      CAPTURE(chi0.label);
      const InductionCheck r = check_induction_identities(incl, chi0);
      CHECK(r.pass);
      CHECK(std::abs(r.lhs_haar - r.rhs_haar) <= 1e-8);
      CHECK(std::abs(r.lhs_push - r.rhs_push) <= 1e-8);
    }
  }
}

TEST_CASE("non-normal inclusions are rejected") {
  const auto u1 = builtin_model("U1");
  const auto nu1 = builtin_model("N_U1");
  SubgroupInclusion incl = builtin_inclusion("U1", "N_U1");
  incl.normal = false;
  CHECK_THROWS_AS(induce_character(incl, u1->character("1")), UnsupportedInclusionError);
}

TEST_CASE("character orthonormality on every built-in") {
  for (const auto& n : builtin_model_names()) {
    const auto m = builtin_model(n);
    const int nodes = m->rank(0) == 2 ? 128 : 1024;
    const auto g = gram_matrix(*m, m->characters, nodes);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
    CAPTURE(n);
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("SU2 orthonormality against an independent Simpson oracle") {
  for (int j = 0; j <= 6; ++j)
    for (int k = 0; k <= 6; ++k) {
      const double v = oracle::simpson(
          [&](double t) { return 2 / pi * std::sin((j + 1) * t) * std::sin((k + 1) * t); }, 0, pi);
      CHECK(v == doctest::Approx(j == k ? 1.0 : 0.0).epsilon(1e-10));
    }
}

TEST_CASE("Artin decomposition examples") {
  const auto nu1 = builtin_model("N_U1");
  const auto tower = cyclic_intermediates(nu1);
  const VirtualCharacter v = artin_decompose(*nu1, nu1->character("ind_2"), tower);
  REQUIRE(v.terms.size() == 1);
  CHECK(v.terms[0].coefficient == Rational(1));
  CHECK(v.terms[0].source->name == "U1<N_U1");
  const std::string inner = v.terms[0].inner.label;
  CHECK((inner == "z^2" || inner == "z^-2"));
  CHECK(v.residual <= 1e-8);

  const VirtualCharacter t = artin_decompose(*nu1, nu1->character("1"), tower);
  REQUIRE(t.terms.size() == 1);
  CHECK(t.terms[0].coefficient == Rational(1));
  CHECK(t.terms[0].source->sub->name == "N_U1");
  CHECK(t.terms[0].inner.is_trivial);

  const auto o3 = builtin_model("O3_CANDIDATE");
  const VirtualCharacter s = artin_decompose(*o3, *o3->sign_character(), cyclic_intermediates(o3));
  REQUIRE(s.terms.size() == 1);
  CHECK(s.terms[0].coefficient == Rational(1));
  CHECK(s.terms[0].source->sub->name == "O3_CANDIDATE");
  CHECK(s.terms[0].inner.is_sign);
}

TEST_CASE("Artin decomposition reconstructs every listed irreducible") {
  for (const char* n : {"N_U1", "O3_CANDIDATE", "SU2", "USp4"}) {
    const auto m = builtin_model(n, 3);
    const auto tower = cyclic_intermediates(m);
    for (const auto& chi : m->characters) {
      CAPTURE(chi.label);
      const VirtualCharacter v = artin_decompose(*m, chi, tower);
      for (const auto& x : halton_grid_all(*m)) CHECK(std::abs(v.evaluate(x) - chi.eval(x)) <= 1e-8);
    }
  }
}

TEST_CASE("rational arithmetic") {
  const Rational a(1, 2), b(-2, 6);
  CHECK((a + b) == Rational(1, 6));
  CHECK((a * b) == Rational(-1, 6));
  CHECK((a / b) == Rational(-3, 2));
  CHECK(Rational(4, -8).str() == "-1/2");
  CHECK_THROWS(Rational(1, 0));
}

}  // TEST_SUITE
