#include <doctest.h>

#include "dlscape/dlfield.hpp"
#include "dlscape/error.hpp"
#include "dlscape/zoo.hpp"
#include "oracles.hpp"

using namespace dlscape;

namespace {

GraphSpace space(const std::string& spec) { return zoo::build(parse_generator_spec(spec)); }

}  // namespace

TEST_CASE("catalog lists every generator") {
  std::set<std::string> names;
  for (const auto& g : zoo::catalog()) names.insert(g.name);
  for (const char* n : {"line", "halfline", "tree", "grid2d", "h_graph", "stick", "pendant_line",
                        "cylinder"}) {
    CHECK(names.count(n) == 1);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(space("tree:b=0"), DomainError);
  CHECK_THROWS_AS(space("cylinder:m=2"), DomainError);
  CHECK_THROWS_AS(space("stick:m=3,h=-1"), DomainError);
  CHECK_THROWS_AS(space("line:q=1"), DomainError);
  CHECK_THROWS_AS(space("nowhere"), DomainError);
  CHECK(zoo::normalize(parse_generator_spec("stick")).param("m") == 6);
}

TEST_CASE("h_graph distance to (0,k) is 3k") {
  auto w = materialize_window(space("h_graph"), {0, 0}, 60);
  for (std::int64_t k = 1; k <= 20; ++k) CHECK(w->dist_from_base(w->id_of({0, k})) == 3 * k);
}

TEST_CASE("h_graph sphere law for n divisible by 6") {
  auto w = materialize_window(space("h_graph"), {0, 0}, 40);
  for (std::int64_t n : {6, 12, 18, 24, 30, 36}) {
    for (const auto& e : zoo::oracle(parse_generator_spec("h_graph"), zoo::Quantity::sphere, n)) {
      CHECK(w->dist_from_base(w->id_of(e.at)) == n);
    }
  }
  CHECK_THROWS_AS(zoo::oracle(parse_generator_spec("h_graph"), zoo::Quantity::sphere, 13),
                  DomainError);
}

TEST_CASE("tree and stick distances") {
  auto t = materialize_window(space("tree:b=2"), {0, 0}, 5);
  for (std::int64_t i = 0; i < 8; ++i) CHECK(t->dist_from_base(t->id_of({3, i})) == 3);
  for (int h : {0, 1, 3}) {
    auto sp = space("stick:m=5,h=" + std::to_string(h));
    auto w = materialize_window(sp, {0, 0}, 10);
    for (std::int64_t j = 0; j < 5; ++j) {
      CHECK(w->dist_from_base(w->id_of({h + 1, j})) == h + 1);
      CHECK(zoo::stick_apex_distance(sp.spec(), {h + 1, j}) == h + 1);
    }
  }
}

TEST_CASE("tree(3) point-assigned field is -d on a small window") {
  auto w = materialize_window(space("tree:b=3"), {0, 0}, 8);
  std::vector<std::int64_t> sched{2, 4, 6, 8};
  auto f = u_point_assigned(w, sched, 2, 4).field;
  for (VertexId v = 0; v < f.size(); ++v) {
    CHECK(f[v] == -w->dist_from_base(v));
    auto e = zoo::expected_point_assigned(parse_generator_spec("tree:b=3"), {0, 0}, w->vertex(v));
    REQUIRE(e.has_value());
    CHECK(e->value == f[v]);
  }
}

TEST_CASE("stick apex is a pole") {
  auto sp = space("stick:m=6,h=2");
  auto w = materialize_window(sp, {0, 0}, 40);
  auto f = u_point_assigned(w, make_schedule(40, 2), 10).field;
  for (VertexId v = 0; v < f.size(); ++v) {
    CHECK(f.is_stable(v));
    CHECK(f[v] == -zoo::stick_apex_distance(sp.spec(), w->vertex(v)));
  }
}

TEST_CASE("stick fields from other bases stay within half a circumference") {
  auto sp = space("stick:m=6,h=2");
  const Vertex base{5, 2};
  auto w = materialize_window(sp, base, 60);
  auto f = u_point_assigned(w, make_schedule(60, 3), 12).field;
  std::size_t checked = 0;
  for (VertexId v = 0; v < f.size(); ++v) {
    if (!f.is_stable(v)) continue;
    auto e = zoo::expected_point_assigned(sp.spec(), base, w->vertex(v));
    REQUIRE(e.has_value());
    CHECK(std::abs(f[v] - e->value) <= e->tolerance);
    CHECK(e->tolerance == 3);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("closed forms agree with an explicit brute force of u^r") {
  // h_graph against the segment construction, far-out sphere.
  auto g = oracle::h_graph(200, 200);
  for (std::int64_t k = 1; k <= 6; ++k) {
    CHECK(oracle::u_r(g, {0, 0}, {k, 0}, 60) == -k);
    CHECK(oracle::u_r(g, {0, 0}, {0, k}, 60) == k);
    CHECK(oracle::u_r(g, {0, 0}, {k, k}, 60) == 0);
  }
  for (const auto& e : zoo::oracle(parse_generator_spec("h_graph"), zoo::Quantity::point_assigned, 6)) {
    CHECK(oracle::u_r(g, {0, 0}, {e.at.a, e.at.b}, 60) == e.value);
  }
}

TEST_CASE("rho closed forms") {
  auto line = parse_generator_spec("line");
  CHECK(zoo::expected_twice_rho(line, {2, 0}, {-3, 0})->value == 10);
  auto half = parse_generator_spec("halfline");
  CHECK(zoo::expected_twice_rho(half, {2, 0}, {7, 0})->value == 0);
  auto pend = parse_generator_spec("pendant_line");
  CHECK(zoo::expected_twice_rho(pend, {2, 1}, {-1, 0})->value == 6);
}
