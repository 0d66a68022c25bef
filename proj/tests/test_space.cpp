#include <doctest.h>

#include "ekv/space.hpp"
#include "fixtures.hpp"

using namespace ekv;

namespace {

FiniteSpace two_point() { return FiniteSpace({"a", "b"}, {0, 1, 2, 0}); }

std::vector<PointId> all(std::size_t n) {
  std::vector<PointId> v(n);
  for (PointId i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_SUITE("space-core") {
  TEST_CASE("validate_axioms on a two-point quasi-metric") {
    const AxiomReport r = validate_axioms(two_point());
    CHECK(r.qm1_ok);
    CHECK(r.qm2_ok);
    CHECK(r.is_quasi_metric);
    CHECK(r.is_t1);
    CHECK_FALSE(r.qm2_witness);
  }

  TEST_CASE("upper grid is a quasi-metric but not T1") {
    const AxiomReport r = validate_axioms(fixtures::upper_grid());
    CHECK(r.is_quasi_metric);
    CHECK_FALSE(r.is_t1);
    REQUIRE(r.t1_witness);
    const FiniteSpace g = fixtures::upper_grid();
    CHECK(g(r.t1_witness->first, r.t1_witness->second) == 0.0);
  }

  TEST_CASE("triangle violation names the triple") {
    const FiniteSpace s({"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 2, 1, 0});
    const AxiomReport r = validate_axioms(s);
    CHECK_FALSE(r.qm2_ok);
    REQUIRE(r.qm2_witness);
    CHECK(*r.qm2_witness == std::array<PointId, 3>{0, 1, 2});
  }

  TEST_CASE("malformed entries are rejected with the pair") {
    const FiniteSpace neg({"a", "b"}, {0, -1, 1, 0});
    CHECK_THROWS_AS(validate_axioms(neg), MalformedSpaceError);
    const FiniteSpace inf({"a", "b"}, {0, std::numeric_limits<double>::infinity(), 1, 0});
    try {
      validate_axioms(inf);
      FAIL("expected MalformedSpaceError");
    } catch (const MalformedSpaceError& e) {
      CHECK(std::string(e.what()).find("a") != std::string::npos);
    }
  }

  TEST_CASE("construction checks shape and ids") {
    CHECK_THROWS(FiniteSpace({"a", "b"}, {0, 1, 1}));
    CHECK_THROWS(FiniteSpace({"a", "a"}, {0, 1, 1, 0}));
  }

  TEST_CASE("conjugate transposes and is an involution") {
    const FiniteSpace c = conjugate(two_point());
    CHECK(c(0, 1) == 2.0);
    CHECK(c(1, 0) == 1.0);
    CHECK(conjugate(c) == two_point());
    const ImplicitSpace u(Formula::upper, 0, 1);
    const ImplicitSpace ub = conjugate(u);
    CHECK(ub.formula() == Formula::lower);
    CHECK(ub.distance(3, 1) == 2.0);
    CHECK(ub.distance(1, 3) == 0.0);
  }

  TEST_CASE("symmetrize takes the maximum") {
    const FiniteSpace s = symmetrize(two_point());
    CHECK(s(0, 1) == 2.0);
    CHECK(s(1, 0) == 2.0);
    const ImplicitSpace us = symmetrize(ImplicitSpace(Formula::upper, 0, 1));
    CHECK(us.formula() == Formula::absolute);
    for (double x : {-2.0, 0.0, 0.25, 3.0})
      for (double y : {-1.0, 0.0, 0.5, 7.0}) CHECK(us.distance(x, y) == std::abs(x - y));
  }

  TEST_CASE("symmetrized quasi-metric satisfies the metric identity axiom") {
    const FiniteSpace s = symmetrize(fixtures::upper_grid());
    const AxiomReport r = validate_axioms(s);
    CHECK(r.valid());
    CHECK(r.is_quasi_metric);
    CHECK(r.is_t1);
  }

  TEST_CASE("balls") {
    const FiniteSpace g = fixtures::upper_grid();
    CHECK(ball(g, 1, 0.6, BallShape::open, Which::d) == all(3));
    CHECK(ball(g, 1, 0.5, BallShape::open, Which::d) == std::vector<PointId>{0, 1});
    CHECK(ball(g, 1, 0.5, BallShape::closed, Which::d) == all(3));
    CHECK(ball(g, 1, 0.0, BallShape::open, Which::d).empty());
    CHECK(ball(g, 1, -1.0, BallShape::open, Which::d).empty());
    for (PointId x = 0; x < g.size(); ++x) {
      const auto b = ball(g, x, 1e-3, BallShape::open, Which::ds);
      CHECK(std::find(b.begin(), b.end(), x) != b.end());
    }
  }

  TEST_CASE("closure of a singleton") {
    const FiniteSpace g = fixtures::upper_grid();
    CHECK(closure_of_singleton(g, 0) == all(3));
    CHECK(closure_of_singleton(g, 2) == std::vector<PointId>{2});
    const FiniteSpace t1 = fixtures::three_point();
    for (PointId z = 0; z < 3; ++z) CHECK(closure_of_singleton(t1, z) == std::vector<PointId>{z});
    const FiniteSpace dup({"a", "b"}, {0, 0, 0, 0});
    CHECK(closure_of_singleton(dup, 0) == all(2));
  }

  TEST_CASE("random spaces") {
    const FiniteSpace one = generate_random_qpm(1, 7);
    CHECK(one.size() == 1);
    CHECK(one(0, 0) == 0.0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      RandomSpaceParams p;
      p.zero_probability = 0.2;
      p.integer_valued = seed % 2 == 0;
      const FiniteSpace s = generate_random_qpm(1 + seed % 15, seed, p);
      CHECK(validate_axioms(s).valid());
      CHECK(s == generate_random_qpm(1 + seed % 15, seed, p));
    }
  }

  TEST_CASE("canonical spaces") {
    const FiniteSpace g = fixtures::upper_grid();
    REQUIRE(g.size() == 3);
    CHECK(g(0, 2) == 1.0);
    CHECK(g(2, 0) == 0.0);
    CHECK(g.ids() == std::vector<std::string>{"0", "0.5", "1"});

    const FiniteSpace m = canonical_space(CanonicalFamily::symmetric_metric, {});
    CHECK(conjugate(m) == m);

    const FiniteSpace cyc = canonical_space(CanonicalFamily::directed_cycle, {});
    CHECK(cyc(0, 1) == 1.0);
    CHECK(cyc(1, 0) == 2.0);

    CanonicalParams path;
    path.nodes = 4;
    path.forward = 1.0;
    path.backward = 3.0;
    const FiniteSpace ag = canonical_space(CanonicalFamily::asymmetric_graph, path);
    CHECK(ag(0, 3) == 3.0);
    CHECK(ag(3, 0) == 9.0);

    for (auto fam : {CanonicalFamily::upper_grid, CanonicalFamily::directed_cycle, CanonicalFamily::asymmetric_graph,
                     CanonicalFamily::symmetric_metric})
      CHECK(validate_axioms(canonical_space(fam, {})).valid());

    CanonicalParams bad;
    bad.step = 0.0;
    CHECK_THROWS_AS(canonical_space(CanonicalFamily::upper_grid, bad), ParameterError);
    bad.step = 0.5;
    bad.hi = -1.0;
    CHECK_THROWS_AS(canonical_space(CanonicalFamily::upper_grid, bad), ParameterError);
  }

  TEST_CASE("implicit spaces") {
    const ImplicitSpace ray = canonical_implicit(CanonicalFamily::symmetric_metric, {0, 1, 1, 3, 1, 1});
    CHECK(ray.sample(50) == 50.0);
    std::vector<double> sample{0, 1, 2, 3, 4};
    const AxiomReport r = validate_axioms(ray, sample);
    CHECK(r.sampled);
    CHECK(r.sample_size == 5);
    CHECK(r.valid());
    const FiniteSpace t = ray.truncate(4);
    CHECK(t.size() == 4);
    CHECK(t(3, 0) == 3.0);
    const QpmSpace q = ray;
    CHECK_THROWS_AS(require_finite(q, "ball"), ImplicitSpaceError);
  }
}
