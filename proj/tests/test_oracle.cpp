#include <doctest.h>

#include "ekv/oracle.hpp"
#include "fixtures.hpp"

using namespace ekv;

namespace {

constexpr PointId a = 0, b = 1, c = 2;

}  // namespace

TEST_SUITE("oracle-harness") {
  TEST_CASE("Ekeland oracle on the three-point example") {
    const FiniteSpace s = fixtures::three_point();
    const Objective f = fixtures::three_point_f();
    const OracleResult o = oracle_ekeland_all(s, f, 1.0, 1.0, a);
    CHECK(o.admissible == std::vector<PointId>{c});
    CHECK(o.contains(c));
    CHECK_FALSE(o.contains(b));
    CHECK(o.per_condition[c][3] == CondStatus::not_applicable);
    const CrossCheckReport cc = cross_check(ekeland_point(s, f, 1.0, 1.0, a), o);
    CHECK(cc.ok());
    CHECK(cc.mismatches.empty());
  }

  TEST_CASE("localization case from x0 = b") {
    const FiniteSpace s = fixtures::three_point();
    const Objective f = fixtures::three_point_f();
    const OracleResult o = oracle_ekeland_all(s, f, 1.0, 1.0, b);
    REQUIRE_FALSE(o.admissible.empty());
    for (PointId z : o.admissible) CHECK(s(z, b) <= 1.0);
    CHECK(o.contains(ekeland_point(s, f, 1.0, 1.0, b).z));
  }

  TEST_CASE("strong oracles on the three-point example") {
    const FiniteSpace s = fixtures::three_point();
    const Objective f = fixtures::three_point_f();
    const OracleResult og = oracle_strong_all(s, f, 1.0, 0.5, a, StrongFlavor::georgiev);
    CHECK(og.contains(c));
    CHECK(cross_check(strong_ekeland_georgiev(s, f, 1.0, 0.5, a), og).ok());
    const OracleResult os = oracle_strong_all(s, f, 1.0, std::nullopt, a, StrongFlavor::suzuki);
    CHECK(cross_check(strong_ekeland_suzuki(s, f, 1.0, a), os).ok());
  }

  TEST_CASE("two-point instance excludes b") {
    const double gamma = 0.5;
    const FiniteSpace s({"a", "b"}, {0, 1, 1, 0});
    const Objective f({0.0, gamma});
    const OracleResult o = oracle_strong_all(s, f, gamma, std::nullopt, 1, StrongFlavor::suzuki);
    CHECK(o.per_condition[1][3] == CondStatus::fail);
    CHECK_FALSE(o.contains(1));
    CHECK(o.contains(0));
  }

  TEST_CASE("points outside dom f are never admissible") {
    const FiniteSpace s = fixtures::three_point();
    const Objective f({1.0, fixtures::inf(), 0.5});
    const OracleResult o = oracle_ekeland_all(s, f, 1.0, 1.0, a);
    CHECK_FALSE(o.contains(b));
  }

  TEST_CASE("errors") {
    const FiniteSpace big = generate_random_qpm(70, 1);
    CHECK_THROWS_AS(oracle_ekeland_all(big, Objective::constant(70, 0.0), 1.0, 1.0, 0), CapExceededError);
    const FiniteSpace s = fixtures::three_point();
    const Objective f = fixtures::three_point_f();
    const OracleResult other = oracle_ekeland_all(s, f, 1.0, 2.0, a);
    CHECK_THROWS_AS(cross_check(ekeland_point(s, f, 1.0, 1.0, a), other), InstanceMismatchError);
    CHECK_THROWS_AS(oracle_strong_all(s, f, 1.0, std::nullopt, a, StrongFlavor::georgiev), ParameterError);
  }

  TEST_CASE("random instances") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const RandomInstance inst = make_random_instance(seed);
      CHECK(inst.space.size() >= 1);
      CHECK(inst.space.size() <= 12);
      CHECK(inst.f.in_domain(inst.x0));
      CHECK(inst.eps > 0.0);
      CHECK(inst.eps <= 5.0);
      CHECK(inst.gamma > 0.0);
      CHECK(inst.gamma <= 3.0);
      CHECK(validate_axioms(inst.space).valid());
      CHECK_FALSE(check_instance(inst, {}));
    }
    CHECK(make_random_instance(42).space == make_random_instance(42).space);
  }

  TEST_CASE("falsifier: clean run, determinism and jobs") {
    FalsifyConfig cfg;
    cfg.budget = 300;
    const FalsifyReport r = falsify(cfg);
    CHECK_FALSE(r.counterexample);
    CHECK(r.instances_tested == 300);

    cfg.opts.mutation = Mutation::cond_iii_reversed;
    const FalsifyReport serial = falsify(cfg);
    cfg.jobs = 4;
    const FalsifyReport parallel = falsify(cfg);
    REQUIRE(serial.counterexample);
    REQUIRE(parallel.counterexample);
    CHECK(serial.counterexample->instance_index == parallel.counterexample->instance_index);
    CHECK(serial.counterexample->detail == parallel.counterexample->detail);
  }

  TEST_CASE("falsifier: every mutation is caught") {
    for (Mutation m : kAllMutations) {
      FalsifyConfig cfg;
      cfg.opts.mutation = m;
      const FalsifyReport r = falsify(cfg);
      CHECK_MESSAGE(r.counterexample.has_value(), to_string(m));
    }
  }

  TEST_CASE("probe family is descriptive") {
    FalsifyConfig cfg;
    cfg.family = FalsifyFamily::probe;
    cfg.budget = 50;
    const FalsifyReport r = falsify(cfg);
    CHECK_FALSE(r.counterexample);
    CHECK(r.notes.size() == 3);
  }
}
