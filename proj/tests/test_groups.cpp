#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "satotate/errors.hpp"
#include "satotate/groups.hpp"
#include "satotate/measures.hpp"
#include "satotate/sampling.hpp"

using namespace satotate;
using oracle::pi;

TEST_SUITE("groups") {

TEST_CASE("catalog lookup") {
  const auto& names = builtin_model_names();
  CHECK(names.size() == 9);
  for (const auto& n : names) CHECK(builtin_model(n)->name == n);
  CHECK_THROWS_AS(builtin_model("GL2"), CatalogError);
  try {
    builtin_model("nope");
  } catch (const CatalogError& e) {
    CHECK(std::string(e.what()).find("USp4") != std::string::npos);
  }
}

TEST_CASE("catalog shapes") {
  const auto su2 = builtin_model("SU2");
  CHECK(su2->order() == 1);
  CHECK(su2->rank(0) == 1);
  CHECK(su2->weight == 1);
  CHECK(su2->dim_V == 2);

  const auto nu1 = builtin_model("N_U1");
  CHECK(nu1->order() == 2);
  CHECK(nu1->rank(0) == 1);
  CHECK(nu1->rank(1) == 0);

  const auto usp4 = builtin_model("USp4");
  CHECK(usp4->order() == 1);
  CHECK(usp4->rank(0) == 2);
}

TEST_CASE("component groups satisfy the group law") {
  for (const auto& n : builtin_model_names()) {
    CAPTURE(n);
    const auto m = builtin_model(n);
    CHECK(m->components.order() >= 1);
    CHECK(m->components.is_group());
  }
  const ComponentGroup c4 = ComponentGroup::cyclic({"0", "1", "2", "3"});
  CHECK(c4.is_group());
  CHECK(c4.element_order(1) == 4);
  CHECK(c4.element_order(2) == 2);
  CHECK(c4.inverse(1) == 3);
  const ComponentGroup bad({"a", "b"}, {{0, 1}, {1, 1}}, 0);
  CHECK_FALSE(bad.is_group());
}

TEST_CASE("class density values") {
  const auto su2 = builtin_model("SU2");
  CHECK(class_density(*su2, ClassPoint(0, {pi / 2})) == doctest::Approx(2.0 / pi).epsilon(1e-12));
  CHECK(class_density(*su2, ClassPoint(0, {0.0})) == doctest::Approx(0.0));
  const auto nu1 = builtin_model("N_U1");
  CHECK(class_density(*nu1, ClassPoint(1, {})) == 1.0);
}

TEST_CASE("class densities integrate to one on every component (independent Simpson)") {
  for (const auto& n : builtin_model_names()) {
    const auto m = builtin_model(n);
    for (int c = 0; c < m->order(); ++c) {
      CAPTURE(n);
      CAPTURE(c);
      const ComponentSpec& spec = m->component_specs[c];
      double total = 0.0;
      if (spec.rank == 0) {
        total = class_density(*m, ClassPoint(c, {}));
      } else if (spec.rank == 1) {
        const auto box = spec.box();
        total = oracle::simpson([&](double t) { return class_density(*m, m->canonical(c, {t})); }, box[0].lo,
                                box[0].hi);
      } else if (spec.ordered) {
        // Chamber t1 >= t2 as an iterated integral over the triangle.
        total = oracle::simpson_r(
            [&](double t1) {
              return oracle::simpson_r([&](double t2) { return class_density(*m, m->canonical(c, {t1, t2})); }, 0.0, t1);
            },
            0.0, pi);
      } else {
        const auto box = spec.box();
        total = oracle::simpson_r(
            [&](double t1) {
              return oracle::simpson_r([&](double t2) { return class_density(*m, m->canonical(c, {t1, t2})); },
                                     box[1].lo, box[1].hi);
            },
            box[0].lo, box[0].hi);
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("USp4 density matches the Weyl density normalized independently") {
  const auto m = builtin_model("USp4");
  const double z = oracle::simpson2(oracle::usp4_weight, 0.0, pi);
  for (const auto& x : halton_grid(*m, 0, 50)) {
    CHECK(class_density(*m, x) == doctest::Approx(2.0 * oracle::usp4_weight(x[0], x[1]) / z).epsilon(1e-8));
  }
}

TEST_CASE("standard character values") {
  const auto su2 = builtin_model("SU2");
  CHECK(character_value(*su2, su2->character("sym^1"), ClassPoint(0, {pi / 3})).real() == doctest::Approx(1.0));
  const auto so3 = builtin_model("SO3");
  CHECK(character_value(*so3, so3->character("D_1"), ClassPoint(0, {0.0})).real() == doctest::Approx(3.0));
  CHECK(character_value(*so3, so3->character("D_1"), ClassPoint(0, {pi / 2})).real() == doctest::Approx(-1.0));
  CHECK_THROWS_AS(character_value(*su2, so3->character("D_1"), ClassPoint(0, {0.0})), ContractError);
}

TEST_CASE("SU2 characters are sin((k+1)t)/sin t") {
  const auto su2 = builtin_model("SU2");
  for (int k = 0; k <= 6; ++k) {
    const auto& chi = su2->character(k == 0 ? "1" : "sym^" + std::to_string(k));
    for (double t : {0.1, 0.7, 1.3, 2.2, 3.0}) {
      CHECK(chi.eval(ClassPoint(0, {t})).real() == doctest::Approx(std::sin((k + 1) * t) / std::sin(t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("USp4 characters agree with the Weyl ratio and the dimension formula") {
  const auto m = builtin_model("USp4");
  for (int a = 1; a <= 6; ++a) {
    for (int b = 0; b <= a; ++b) {
      const auto& chi = m->character("V(" + std::to_string(a) + "," + std::to_string(b) + ")");
      CHECK(chi.dimension == oracle::sp4_dimension(a, b));
      CHECK(chi.eval(m->identity_class()).real() == doctest::Approx(oracle::sp4_dimension(a, b)));
      for (const auto& x : halton_grid(*m, 0, 40)) {
        if (std::abs(x[0] - x[1]) < 1e-3 || x[1] < 1e-3 || x[0] > pi - 1e-3) continue;
        CHECK(chi.eval(x).real() == doctest::Approx(oracle::sp4_weyl_ratio(a, b, x[0], x[1])).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("characters are bounded by their dimension on the grid") {
  for (const auto& n : builtin_model_names()) {
    const auto m = builtin_model(n);
    for (int c = 0; c < m->order(); ++c) {
      const auto grid = halton_grid(*m, c);
      for (const auto& chi : m->characters) {
        double worst = 0.0;
        for (const auto& x : grid) worst = std::max(worst, std::abs(chi.eval(x)));
        CAPTURE(n);
        CAPTURE(chi.label);
        CHECK(worst <= chi.dimension + 1e-9);
      }
    }
  }
}

TEST_CASE("character cap filters on level") {
  const auto su2 = builtin_model("SU2", 3);
  CHECK(su2->characters.size() == 4);
  CHECK(su2->nontrivial_characters(2).size() == 2);
  CHECK(builtin_model("U1xU1", 6)->characters.size() == 169);
}

TEST_CASE("class points are validated against the fundamental domain") {
  const auto su2 = builtin_model("SU2");
  CHECK(su2->is_valid(ClassPoint(0, {1.0})));
  CHECK_FALSE(su2->is_valid(ClassPoint(0, {4.0})));
  CHECK_THROWS_AS(su2->validate(ClassPoint(0, {1.0, 2.0})), DomainError);
  CHECK_THROWS_AS(su2->validate(ClassPoint(1, {1.0})), DomainError);
  const auto usp4 = builtin_model("USp4");
  CHECK_FALSE(usp4->is_valid(ClassPoint(0, {0.5, 1.0})));
  const ClassPoint c = usp4->canonical(0, {0.5, 1.0});
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 0.5);
  const auto u1 = builtin_model("U1");
  CHECK(u1->same_class(ClassPoint(0, {0.0}), u1->canonical(0, {2 * pi})));
}

TEST_CASE("fusion on U1 < N_U1") {
  const SubgroupInclusion incl = builtin_inclusion("U1", "N_U1");
  CHECK(incl.index == 2);
  CHECK(incl.normal);
  const auto& amb = *incl.amb;
  CHECK(amb.same_class(fuse_class(incl, ClassPoint(0, {pi / 3})), fuse_class(incl, ClassPoint(0, {5 * pi / 3}))));
  CHECK(amb.same_class(fuse_class(incl, ClassPoint(0, {0.0})), amb.identity_class()));

  const auto fiber = fusion_fiber(incl, fuse_class(incl, ClassPoint(0, {pi / 3})));
  REQUIRE(fiber.size() == 2);
  std::set<double> angles{fiber[0][0], fiber[1][0]};
  CHECK(*angles.begin() == doctest::Approx(pi / 3));
  CHECK(*angles.rbegin() == doctest::Approx(5 * pi / 3));
  CHECK(fusion_fiber(incl, amb.identity_class()).size() == 1);
  CHECK_THROWS_AS(fusion_fiber(incl, ClassPoint(1, {})), NotInImageError);
}

TEST_CASE("identity inclusion fuses trivially") {
  const SubgroupInclusion incl = builtin_inclusion("SU2", "SU2");
  const ClassPoint y(0, {1.234});
  CHECK(incl.sub->same_class(fuse_class(incl, y), y));
  const auto fiber = fusion_fiber(incl, y);
  REQUIRE(fiber.size() == 1);
  CHECK(fiber[0][0] == doctest::Approx(1.234));
}

TEST_CASE("fusion is constant on coset orbits and fibers divide the index") {
  for (const auto& incl : builtin_inclusions()) {
    CAPTURE(incl.name);
    for (const auto& y : sample_haar_points(*incl.sub, 200, 11)) {
      const ClassPoint x = fuse_class(incl, y);
      for (const auto& act : incl.coset_reps) CHECK(incl.amb->same_class(fuse_class(incl, act(y)), x, 1e-12));
      const auto fiber = fusion_fiber(incl, x);
      CHECK(incl.index % static_cast<int>(fiber.size()) == 0);
      if (incl.name == "U1<N_U1") CHECK(fiber.size() == 2);
    }
  }
}

TEST_CASE("minus identity flags") {
  CHECK_FALSE(builtin_model("SO3")->has_minus_id_in_identity_component);
  CHECK_FALSE(builtin_model("O3_CANDIDATE")->has_minus_id_in_identity_component);
  for (const char* n : {"SU2", "USp4", "SU2xSU2"}) CHECK(builtin_model(n)->has_minus_id_in_identity_component);
}

TEST_CASE("derived group metadata") {
  CHECK(builtin_model("USp4")->derived_group_metadata.simple_factor_types == std::vector<std::string>{"C2"});
  const auto& d = builtin_model("SU2xSU2")->derived_group_metadata;
  CHECK(d.simple_factor_types.size() == 2);
  CHECK_FALSE(d.pairwise_distinct);
  CHECK(builtin_model("U1")->derived_group_metadata.simple_factor_types.empty());
}

TEST_CASE("Haar samples are valid and reproducible") {
  for (const auto& n : builtin_model_names()) {
    const auto m = builtin_model(n);
    const auto a = sample_haar_points(*m, 500, 5);
    const auto b = sample_haar_points(*m, 500, 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(m->is_valid(a[i]));
      CHECK(a[i].component == b[i].component);
      CHECK(a[i].angle == b[i].angle);
    }
  }
}

}  // TEST_SUITE
