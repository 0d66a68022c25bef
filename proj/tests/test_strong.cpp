#include <doctest.h>

#include "ekv/strong.hpp"
#include "fixtures.hpp"

using namespace ekv;

namespace {

constexpr PointId a = 0, b = 1, c = 2;

// d(a,b) = d(b,a) = 1, f(a) = 0, f(b) = gamma
FiniteSpace two() { return FiniteSpace({"a", "b"}, {0, 1, 1, 0}); }

}  // namespace

TEST_SUITE("strong-ekeland") {
  TEST_CASE("Georgiev on the three-point example") {
    const StrongCertificate cert =
        strong_ekeland_georgiev(fixtures::three_point(), fixtures::three_point_f(), 1.0, 0.5, a);
    CHECK(cert.z == c);
    CHECK(cert.lambda_internal == doctest::Approx(1.0 / 7.0));
    CHECK(cert.lambda_prime == doctest::Approx(6.0 / 7.0));
    CHECK(cert.restricted_set == std::vector<PointId>{a, b, c});
    CHECK(cert.inf_full == cert.inf_restricted);
    CHECK(cert.conditions_pass());
    CHECK(cert.all_pass());
    CHECK(cert.internal_checks.size() == 6);
  }

  TEST_CASE("Georgiev with a small delta restricts the space") {
    const Objective f({3.0, 1.0, 0.0});
    const StrongCertificate cert = strong_ekeland_georgiev(fixtures::three_point(), f, 1.0, 0.5, b);
    CHECK(cert.restricted_set == std::vector<PointId>{b, c});
    CHECK(cert.all_pass());
  }

  TEST_CASE("Georgiev with a large delta matches the unrestricted run") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const FiniteSpace s = generate_random_qpm(7, seed);
      RandomObjectiveParams p;
      p.inf_fraction = 0.0;
      const Objective f = random_objective(7, seed + 99, p);
      const StrongCertificate cert = strong_ekeland_georgiev(s, f, 1.5, 1e6, 0);
      CHECK(cert.restricted_set.size() == 7);
      CHECK(cert.z == ekeland_point_prime(s, f, cert.lambda_prime, 0).z);
    }
  }

  TEST_CASE("constant objectives") {
    const FiniteSpace s = fixtures::three_point();
    const Objective k = Objective::constant(3, 1.0);
    for (PointId x0 = 0; x0 < 3; ++x0) {
      CHECK(strong_ekeland_georgiev(s, k, 2.0, 0.1, x0).z == x0);
      CHECK(strong_ekeland_georgiev(s, k, 2.0, 0.1, x0).all_pass());
      CHECK(strong_ekeland_suzuki(s, k, 2.0, x0).z == x0);
      CHECK(strong_ekeland_suzuki(s, k, 2.0, x0).all_pass());
    }
  }

  TEST_CASE("Suzuki on the three-point example") {
    const StrongCertificate cert = strong_ekeland_suzuki(fixtures::three_point(), fixtures::three_point_f(), 1.0, a);
    CHECK(cert.z == c);
    CHECK(cert.all_pass());
    CHECK(cert.internal_checks.empty());
  }

  TEST_CASE("Suzuki condition (i) implies Georgiev (a)") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const FiniteSpace s = generate_random_qpm(6, seed);
      const Objective f = random_objective(6, seed + 7);
      const PointId x0 = f.domain().front();
      const StrongCertificate suz = strong_ekeland_suzuki(s, f, 1.0, x0);
      const double lhs = f(suz.z).value() + s(suz.z, x0);
      CHECK(lhs <= f(x0).value() + 1e-9);
      for (double delta : {1e-6, 0.5, 10.0}) CHECK(lhs <= f(x0).value() + delta);
    }
  }

  TEST_CASE("strong-minimum condition on finite spaces") {
    const FiniteSpace s = fixtures::three_point();
    CHECK(check_strong_min_finite(s, fixtures::three_point_f(), 1.0, c).ok());

    const FiniteSpace dup({"a", "b"}, {0, 0, 0, 0});
    CHECK(check_strong_min_finite(dup, Objective::constant(2, 1.0), 1.0, 0).ok());

    const double gamma = 0.75;
    const Objective f({0.0, gamma});
    const Condition bad = check_strong_min_finite(two(), f, gamma, b);
    CHECK(bad.status == CondStatus::fail);
    CHECK(bad.witness == std::vector<PointId>{a});
    CHECK(simulate_strong_min(two(), f, gamma, b, 200, 40, 3).status == CondStatus::fail);
    CHECK(check_strong_min_finite(two(), f, gamma, a).ok());
    CHECK(simulate_strong_min(two(), f, gamma, a, 200, 40, 3).ok());
  }

  TEST_CASE("statement argument order") {
    // d(a, b) = 0, d(b, a) = 1: only the literal order sees a tie at distance 0
    const FiniteSpace s({"a", "b"}, {0, 0, 1, 0});
    const Objective f({0.0, 0.0});
    CheckOptions literal;
    literal.d_order = DOrder::statement;
    CHECK(check_strong_min_finite(s, f, 1.0, 0).ok());
    CHECK_FALSE(check_strong_min_finite(s, f, 1.0, 0, literal).ok());
  }

  TEST_CASE("probe traces") {
    const FiniteSpace s = fixtures::three_point();
    const auto traces = minimizing_sequence_probe(s, fixtures::three_point_f(), 1.0, c, 20, 30, 9);
    CHECK(traces.size() == 20);
    for (const auto& t : traces) {
      CHECK(t.verdict != TraceVerdict::diverges);
      for (double g : t.g_values) CHECK(g >= -1e-12);
    }
    const auto at_z = evaluate_trace(s, fixtures::three_point_f(), 1.0, c, std::vector<PointId>(10, c));
    CHECK(at_z.verdict == TraceVerdict::converges_to_z);
    CHECK_THROWS_AS(minimizing_sequence_probe(s, fixtures::three_point_f(), 1.0, c, 1, 1, 9), ParameterError);
  }

  TEST_CASE("the ray: strict but not strong") {
    const ImplicitSpace ray(Formula::absolute, 0, 1);
    const auto f = ImplicitObjective::by_name("x2_exp_neg");
    std::vector<double> n(51);
    for (std::size_t k = 0; k < n.size(); ++k) n[k] = ray.sample(k);
    const auto t = evaluate_trace(ray, f, 0.0, 0.0, n);
    CHECK(t.verdict == TraceVerdict::diverges);
    REQUIRE(t.witness);
    CHECK(t.dists[*t.witness] > 1.0);
    CHECK(std::abs(t.g_values.back()) < 1e-18);

    const auto probes = minimizing_sequence_probe(ray, f, 0.0, 0.0, 6, 51, 1);
    CHECK(probes.front().verdict == TraceVerdict::diverges);

    for (std::size_t len : {2, 5, 20, 51}) {
      const FiniteSpace trunc = ray.truncate(len);
      const StrongCertificate cert = strong_ekeland_suzuki(trunc, f.tabulate(ray, len), 1.0, 0);
      CHECK(cert.z == 0);
      CHECK(cert.conditions[3].status == CondStatus::pass);
    }
  }

  TEST_CASE("Smyth hypothesis on random spaces") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      RandomSpaceParams p;
      p.zero_probability = 0.3;
      const SmythReport r = check_smyth_hypothesis(generate_random_qpm(8, seed, p), 30, seed);
      CHECK(r.ok());
      CHECK(r.limits_found == 30);
    }
  }

  TEST_CASE("parameter errors") {
    const FiniteSpace s = fixtures::three_point();
    const Objective f = fixtures::three_point_f();
    CHECK_THROWS_AS(strong_ekeland_georgiev(s, f, 0.0, 1.0, a), ParameterError);
    CHECK_THROWS_AS(strong_ekeland_georgiev(s, f, 1.0, 0.0, a), ParameterError);
    CHECK_THROWS_AS(strong_ekeland_suzuki(s, f, -1.0, a), ParameterError);
    CHECK_THROWS(strong_ekeland_suzuki(s, Objective({fixtures::inf(), 1.0, 0.0}), 1.0, a));
  }
}
