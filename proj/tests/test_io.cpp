#include <doctest.h>

#include <filesystem>

#include "ekv/io.hpp"
#include "fixtures.hpp"

using namespace ekv;

TEST_SUITE("io") {
  TEST_CASE("space round trip") {
    const FiniteSpace s = generate_random_qpm(6, 11);
    const QpmSpace back = space_from_json(Json::parse(dump(to_json(s))));
    CHECK(std::get<FiniteSpace>(back) == s);

    const ImplicitSpace ray(Formula::absolute, 0.5, 0.25);
    CHECK(std::get<ImplicitSpace>(space_from_json(to_json(ray))) == ray);
  }

  TEST_CASE("infinite entries survive a round trip") {
    const FiniteSpace s({"a", "b"}, {0, std::numeric_limits<double>::infinity(), 1, 0});
    const Json j = to_json(s);
    CHECK(j["matrix"][0][1] == "inf");
    CHECK(std::get<FiniteSpace>(space_from_json(j)) == s);
  }

  TEST_CASE("fixture files") {
    const std::filesystem::path dir(EKV_DATA_DIR);
    const QpmSpace s = space_from_json(read_json_file(dir / "three_point.json"));
    CHECK(std::get<FiniteSpace>(s) == fixtures::three_point());
    const ObjectiveSpec f = objective_from_json(read_json_file(dir / "three_point.objective.json"), s);
    CHECK(std::get<Objective>(f) == fixtures::three_point_f());
    const QpmSpace ray = space_from_json(read_json_file(dir / "ray.json"));
    const ObjectiveSpec g = objective_from_json(read_json_file(dir / "ray.objective.json"), ray);
    CHECK(std::get<ImplicitObjective>(g).name == "x2_exp_neg");
  }

  TEST_CASE("objective files") {
    const QpmSpace s = fixtures::three_point();
    const Json j = Json::parse(R"({"values": {"a": 1, "b": "inf", "c": 0.5}})");
    const Objective f = std::get<Objective>(objective_from_json(j, s));
    CHECK(f(1).is_infinite());
    CHECK(f(2).value() == 0.5);
    CHECK(to_json(f, fixtures::three_point())["values"]["b"] == "inf");
    CHECK_THROWS_AS(objective_from_json(Json::parse(R"({"values": {"a": 1, "b": 2}})"), s), FormatError);
    CHECK_THROWS_AS(objective_from_json(Json::parse(R"({"values": {"a": 1, "b": 2, "c": 3, "q": 1}})"), s),
                    FormatError);
    CHECK_THROWS_AS(objective_from_json(Json::parse(R"({"values": {"a": "x", "b": 2, "c": 3}})"), s), FormatError);
  }

  TEST_CASE("malformed spaces") {
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"points": ["a"], "matrix": [[0, 1]]})")), FormatError);
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"points": ["a", "a"], "matrix": [[0, 1], [1, 0]]})")),
                    FormatError);
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"matrix": [[0]]})")), FormatError);
    CHECK_THROWS_AS(space_from_json(Json::parse(R"({"formula": "sideways"})")), FormatError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/space.json"), FormatError);
  }

  TEST_CASE("sequence files") {
    const FiniteSpace s = fixtures::three_point();
    const auto seq = finite_sequence_from_json(Json::parse(R"({"indices": [0, 2, 2]})"), s);
    CHECK(seq.size() == 3);
    CHECK(seq.at(1) == 2);
    CHECK_THROWS_AS(finite_sequence_from_json(Json::parse(R"({"indices": [3]})"), s), FormatError);
    const ImplicitSpace ray(Formula::upper, 0, 1);
    const auto h = implicit_sequence_from_json(Json::parse(R"({"formula": "harmonic", "length": 100})"), ray);
    CHECK(h.at(1) == 0.5);
    CHECK(h.size() == 100);
  }

  TEST_CASE("full-precision doubles") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
    const double x = 0.1 + 0.2;
    CHECK(Json::parse(Json(x).dump()).get<double>() == x);
  }

  TEST_CASE("trace CSV") {
    MinimizingTrace<PointId> t;
    t.seq = {0, 1};
    t.g_values = {1.5, 0.25};
    t.dists = {0, 2};
    CHECK(trace_csv(t) == "n,g_value,dist\n0,1.5,0\n1,0.25,2\n");
  }

  TEST_CASE("certificate reports name witnesses by id") {
    const FiniteSpace s({"a", "b"}, {0, 1, 1, 0});
    const Objective f({0.0, 0.5});
    const Condition c = check_strong_min_finite(s, f, 0.5, 1);
    const Json j = to_json(c, s);
    CHECK(j["status"] == "fail");
    CHECK(j["witness"] == Json::array({"a"}));
    const Json rep = envelope("x", {{"k", 1}});
    CHECK(rep["schema_version"] == kSchemaVersion);
  }
}
