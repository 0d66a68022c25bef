#include <doctest.h>

#include "ekv/sequence.hpp"
#include "ekv/strong.hpp"
#include "fixtures.hpp"

using namespace ekv;

namespace {

const ImplicitSpace kUpper(Formula::upper, 0, 1);
constexpr std::size_t kLong = 10'000'000'000;

PointSeq<double> harmonic(std::size_t len = kLong) {
  return PointSeq<double>([](std::size_t k) { return 1.0 / static_cast<double>(k + 1); }, len);
}

bool has(const std::vector<double>& v, double x) { return std::find(v.begin(), v.end(), x) != v.end(); }

FiniteSpace pair_space() { return FiniteSpace({"a", "b"}, {0, 1, 1, 0}); }

PointSeq<PointId> alternating(std::size_t len) {
  std::vector<PointId> v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = i % 2;
  return PointSeq<PointId>(v);
}

}  // namespace

TEST_SUITE("topology-seq") {
  TEST_CASE("constant sequence converges in every mode") {
    const FiniteSpace s = fixtures::three_point();
    const PointSeq<PointId> seq(std::vector<PointId>(20, 1));
    const auto v = classify_convergence(s, seq, {0, 1, 2});
    CHECK(v.d_limits == std::vector<PointId>{1});
    CHECK(v.dbar_limits == std::vector<PointId>{1});
    CHECK(v.ds_limits == std::vector<PointId>{1});
    const auto c = classify_cauchy(s, seq);
    CHECK(c.left.verdict == Tri::yes);
    CHECK(c.right.verdict == Tri::yes);
  }

  TEST_CASE("1/n in the upper quasi-metric") {
    const auto v = classify_convergence(kUpper, harmonic(), {0.0, 1.0});
    CHECK(has(v.d_limits, 0.0));
    CHECK(has(v.dbar_limits, 0.0));
    CHECK(has(v.d_limits, 1.0));
    CHECK_FALSE(has(v.dbar_limits, 1.0));
    CHECK(v.ds_limits == std::vector<double>{0.0});
  }

  TEST_CASE("1/n is right K-Cauchy on every prefix length") {
    for (std::size_t len : {std::size_t{44}, std::size_t{100}, std::size_t{5000}, kLong}) {
      const auto c = classify_cauchy_side(kUpper, harmonic(len), default_eps_schedule(), CauchySide::right);
      CHECK(c.verdict == Tri::yes);
    }
  }

  TEST_CASE("alternating sequence is not right K-Cauchy") {
    const auto c = classify_cauchy_side(pair_space(), alternating(100), default_eps_schedule(), CauchySide::right);
    CHECK(c.verdict == Tri::no);
    REQUIRE(c.witness);
    CHECK(c.witness->n < c.witness->m);
    CHECK(c.witness->distance >= c.witness->eps);
  }

  TEST_CASE("short prefixes are inconclusive") {
    const auto c = classify_cauchy_side(pair_space(), alternating(10), default_eps_schedule(), CauchySide::right);
    CHECK(c.verdict == Tri::inconclusive);
  }

  TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(classify_cauchy_side(pair_space(), alternating(100), {0.5, 0.5}, CauchySide::left), ParameterError);
    CHECK_THROWS_AS(classify_cauchy_side(pair_space(), alternating(100), {}, CauchySide::left), ParameterError);
    CHECK_THROWS_AS(classify_convergence(pair_space(), alternating(100), {}), ParameterError);
    CHECK_THROWS_AS(classify_convergence(pair_space(), alternating(5), {0}), ParameterError);
  }

  TEST_CASE("separation classes") {
    CHECK(separation_class(canonical_space(CanonicalFamily::symmetric_metric, {})) == SeparationClass::t1);
    CHECK(separation_class(fixtures::upper_grid()) == SeparationClass::t0_not_t1);
    CHECK(separation_class(FiniteSpace({"a", "b"}, {0, 0, 0, 0})) == SeparationClass::not_t0);
  }

  TEST_CASE("subsequence promotion") {
    const FiniteSpace s = fixtures::three_point();
    const PointSeq<PointId> constant(std::vector<PointId>(50, 2));
    CHECK(check_subsequence_promotion(s, constant, {1, 3, 5}, PointId{2}, Which::d).holds);

    std::vector<std::size_t> evens;
    for (std::size_t k = kLong - 20; k < kLong; k += 2) evens.push_back(k);
    CHECK(check_subsequence_promotion(kUpper, harmonic(), evens, 0.0, Which::ds).holds);

    CHECK_THROWS_AS(check_subsequence_promotion(pair_space(), alternating(100), {0, 2, 4}, PointId{0}, Which::d),
                    PreconditionError);
    CHECK_THROWS_AS(check_subsequence_promotion(s, constant, {3, 1}, PointId{2}, Which::d), ParameterError);
    CHECK_THROWS_AS(check_subsequence_promotion(s, constant, {60}, PointId{2}, Which::d), ParameterError);
  }

  TEST_CASE("generated right K-Cauchy sequences") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
      RandomSpaceParams p;
      p.zero_probability = 0.3;
      const FiniteSpace s = generate_random_qpm(6, 100 + t, p);
      const auto items = random_right_cauchy_sequence(s, rng, 8, 50);
      const PointSeq<PointId> seq(items);
      CHECK(classify_cauchy_side(s, seq, default_eps_schedule(), CauchySide::right).verdict == Tri::yes);
      std::vector<PointId> tail(items.end() - 10, items.end());
      CHECK_FALSE(classify_convergence(s, seq, tail).d_limits.empty());
    }
  }

  TEST_CASE("dbar-boundedness") {
    const ImplicitSpace ray(Formula::absolute, 0, 1);
    const PointSeq<double> n([&](std::size_t k) { return ray.sample(k); }, 1000);
    const auto r = check_dbar_bounded(ray, n);
    CHECK_FALSE(r.bounded);
    CHECK(r.prefix_only);
    CHECK(check_dbar_bounded(kUpper, harmonic(1000)).bounded);
    CHECK(check_dbar_bounded(pair_space(), alternating(100)).bounded);
  }
}
