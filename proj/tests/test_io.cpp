#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "dlscape/error.hpp"
#include "dlscape/io.hpp"
#include "dlscape/zoo.hpp"

using namespace dlscape;

TEST_CASE("vertex json") {
  CHECK(io::vertex_from_json(io::vertex_to_json({3, -2})) == Vertex{3, -2});
  CHECK(io::vertex_from_json(io::json("4,1")) == Vertex{4, 1});
  CHECK(io::vertex_from_json(io::json("-7")) == Vertex{-7, 0});
  CHECK_THROWS_AS(io::vertex_from_json(io::json::array({1, 2, 3})), DomainError);
}

TEST_CASE("space specs round-trip") {
  auto s = zoo::build(parse_generator_spec("tree:b=3"), Rational(3, 2));
  auto j = io::space_to_json(s);
  auto back = io::space_from_json(j);
  CHECK(io::space_to_json(back) == j);
  CHECK(back.scale() == Rational(3, 2));
  CHECK_THROWS_AS(io::space_from_json(io::json{{"generator", "nope"}}), DomainError);
}

TEST_CASE("load_space from a file with a scale override") {
  const std::string path = "test_io_space.json";
  {
    std::ofstream f(path);
    f << R"({"generator": "grid2d", "params": {}, "scale": {"num": 2, "den": 1}})";
  }
  CHECK(io::load_space(path).scale() == Rational(2));
  CHECK(io::load_space(path, "1/3").scale() == Rational(1, 3));
  CHECK(io::load_space("h_graph").scale() == Rational(1));
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::read_json_file("definitely/missing.json"), DomainError);
}

TEST_CASE("field json round-trip") {
  auto w = materialize_window(zoo::build(parse_generator_spec("h_graph")), {0, 0}, 60);
  auto res = u_point_assigned(w, make_schedule(48, 4), 12);
  auto j = io::field_to_json(res.field, &res.report);
  auto back = io::field_from_json(j);
  CHECK(back.values == res.field.values);
  CHECK(back.stable == res.field.stable);
  CHECK(back.last_change == res.field.last_change);
  CHECK(back.zone == res.field.zone);
  CHECK(back.kind == res.field.kind);
  CHECK(back.window->size() == w->size());
  CHECK(io::field_to_json(back) == io::field_to_json(res.field));

  auto corrupted = j;
  corrupted["values"].erase(corrupted["values"].begin());
  CHECK_THROWS(io::field_from_json(corrupted));
}

TEST_CASE("field csv") {
  auto w = materialize_window(zoo::build(parse_generator_spec("line")), {0, 0}, 10);
  auto f = u_r(w, 5, 2);
  auto csv = io::field_to_csv(f);
  CHECK(csv.rfind("id,a,b,value,stable,last_change\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(f.size()));
}

TEST_CASE("finite spaces round-trip") {
  auto x = gh::make_space({{0, 2, 3}, {2, 0, 1}, {3, 1, 0}}, 1, Rational(5, 3));
  auto y = io::finite_space_from_json(io::finite_space_to_json(x));
  CHECK(y.dist == x.dist);
  CHECK(y.base == x.base);
  CHECK(y.scale == x.scale);
  auto bad = io::finite_space_to_json(x);
  bad["dist"][0][2] = 9;
  bad["dist"][2][0] = 9;
  CHECK_THROWS_AS(io::finite_space_from_json(bad), DomainError);
}

TEST_CASE("correspondence json flags an unproved bound") {
  gh::Correspondence c{{{0, 0}}, 3, false};
  auto j = io::correspondence_to_json(c);
  CHECK(j["flag"] == "LOWER-BOUND-NOT-PROVED");
  c.lower_bound_proved = true;
  CHECK_FALSE(io::correspondence_to_json(c).contains("flag"));
}
