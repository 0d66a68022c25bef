#include <doctest.h>

#include "ekv/objective.hpp"
#include "fixtures.hpp"

using namespace ekv;

TEST_SUITE("objective") {
  TEST_CASE("proper functions only") {
    CHECK_THROWS_AS(Objective({fixtures::inf(), fixtures::inf()}), ParameterError);
    CHECK_THROWS(Objective(std::vector<ExtReal>{}));
    const Objective f({3.0, fixtures::inf(), 1.0});
    CHECK(f.infimum() == 1.0);
    CHECK(f.domain() == std::vector<PointId>{0, 2});
    CHECK_FALSE(f.in_domain(1));
  }

  TEST_CASE("extended reals") {
    CHECK_THROWS(ExtReal(std::nan("")));
    CHECK_THROWS(ExtReal(-std::numeric_limits<double>::infinity()));
    CHECK(ExtReal(1.0) < fixtures::inf());
    CHECK((fixtures::inf() + 5.0).is_infinite());
    CHECK_THROWS_AS(fixtures::inf().value(), PreconditionError);
  }

  TEST_CASE("random objectives keep a finite value") {
    RandomObjectiveParams p;
    p.inf_fraction = 0.95;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Objective f = random_objective(5, seed, p);
      CHECK_FALSE(f.domain().empty());
      CHECK(f == random_objective(5, seed, p));
    }
  }

  TEST_CASE("lower semicontinuity on non-T1 spaces") {
    const FiniteSpace g = fixtures::upper_grid();  // d(y, 0) = 0 for every y
    const Objective up({0.0, 1.0, 2.0});
    CHECK_FALSE(is_lsc(g, up));
    const Objective env = lsc_envelope(g, up);
    CHECK(is_lsc(g, env));
    CHECK(env == Objective({0.0, 0.0, 0.0}));
    const Objective down({2.0, 1.0, 0.0});
    CHECK(is_lsc(g, down));
    CHECK(lsc_envelope(g, down) == down);
    CHECK(is_lsc(fixtures::three_point(), fixtures::three_point_f()));
  }

  TEST_CASE("implicit objectives") {
    const auto f = ImplicitObjective::by_name("x2_exp_neg");
    CHECK(f(0.0) == 0.0);
    CHECK(std::abs(f(50.0)) < 1e-18);
    CHECK_THROWS_AS(ImplicitObjective::by_name("nope"), ParameterError);
    const Objective t = f.tabulate(ImplicitSpace(Formula::absolute, 0, 1), 4);
    CHECK(t.size() == 4);
    CHECK(t(2).value() == doctest::Approx(4.0 * std::exp(-2.0)));
  }
}
