#include <doctest.h>

#include "dlscape/checks.hpp"
#include "dlscape/pseudometric.hpp"
#include "dlscape/zoo.hpp"
#include "oracles.hpp"

using namespace dlscape;

namespace {

std::shared_ptr<const Window> win(const std::string& spec, Vertex base, int r) {
  return materialize_window(zoo::build(parse_generator_spec(spec)), base, r);
}

std::vector<VertexId> ids(const Window& w, std::initializer_list<std::int64_t> xs) {
  std::vector<VertexId> out;
  for (auto x : xs) out.push_back(w.id_of({x, 0}));
  return out;
}

std::vector<ScalarField> fields(const std::shared_ptr<const Window>& w,
                                const std::vector<VertexId>& sample, int zone, int reach) {
  return point_assigned_fields(w, sample, make_schedule(w->radius() - reach, 2), zone);
}

}  // namespace

TEST_CASE("rho equals d on the line") {
  auto w = win("line", {0, 0}, 60);
  auto sample = ids(*w, {-2, 0, 3});
  auto rho = rho_matrix(fields(w, sample, 10, 3));
  const std::int64_t xs[] = {-2, 0, 3};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(rho.is_stable(i, j));
      CHECK(rho.at(i, j) == 2 * std::abs(xs[i] - xs[j]));
      auto e = zoo::expected_twice_rho(parse_generator_spec("line"), {xs[i], 0}, {xs[j], 0});
      CHECK(e->value == rho.at(i, j));
    }
  }
}

TEST_CASE("rho vanishes on the halfline") {
  auto w = win("halfline", {0, 0}, 60);
  auto rho = rho_matrix(fields(w, ids(*w, {0, 1, 4}), 10, 4));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(rho.at(i, j) == 0);
  }
}

TEST_CASE("pendant line rho is twice the spine distance") {
  auto w = win("pendant_line", {0, 0}, 60);
  std::vector<VertexId> sample{w->id_of({0, 0}), w->id_of({2, 1}), w->id_of({-3, 1})};
  auto rho = rho_matrix(point_assigned_fields(w, sample, make_schedule(56, 2), 10));
  CHECK(rho.at(0, 1) == 4);
  CHECK(rho.at(1, 2) == 10);
  CHECK(rho.at(0, 2) == 6);
}

TEST_CASE("anti-triangle inequality") {
  auto w = win("line", {0, 0}, 60);
  auto sample = ids(*w, {0, 1, 2});
  auto fs = fields(w, sample, 10, 2);
  CHECK(anti_triangle_check(fs[0], fs[0], sample[0], sample[0]));
  CHECK(anti_triangle_check(fs[0], fs[1], sample[1], sample[2]));
  CHECK(fs[0][sample[1]] + fs[1][sample[2]] == fs[0][sample[2]]);

  auto h = win("h_graph", {0, 0}, 120);
  std::vector<VertexId> hs{h->id_of({0, 0}), h->id_of({2, 0}), h->id_of({0, 2})};
  auto hf = point_assigned_fields(h, hs, make_schedule(114, 6), 24);
  auto g = oracle::h_graph(240, 240);
  auto ux = [&](oracle::Point x, oracle::Point y) { return oracle::u_r(g, x, y, 110); };
  CHECK(hf[0][hs[1]] == ux({0, 0}, {2, 0}));
  CHECK(hf[1][hs[2]] == ux({2, 0}, {0, 2}));
  CHECK(hf[0][hs[2]] == ux({0, 0}, {0, 2}));
  CHECK(ux({0, 0}, {2, 0}) + ux({2, 0}, {0, 2}) <= ux({0, 0}, {0, 2}));
  CHECK(anti_triangle_check(hf[0], hf[1], hs[1], hs[2]));
}

TEST_CASE("base point Lipschitz bound") {
  auto w = win("line", {0, 0}, 60);
  auto fs = fields(w, ids(*w, {0, 3}), 10, 3);
  auto same = base_lipschitz_check(fs[0], fs[0]);
  CHECK(same.holds);
  CHECK(same.sup_difference == 0);
  auto r = base_lipschitz_check(fs[0], fs[1]);
  CHECK(r.holds);
  CHECK(r.sup_difference == 3);
  CHECK(r.base_distance == 3);

  auto h = win("h_graph", {0, 0}, 120);
  std::vector<VertexId> hs{h->id_of({0, 0}), h->id_of({1, 0})};
  auto hf = point_assigned_fields(h, hs, make_schedule(114, 6), 24);
  auto hr = base_lipschitz_check(hf[0], hf[1]);
  CHECK(hr.holds);
  CHECK(hr.sup_difference <= 1);
}

TEST_CASE("equivalence classes") {
  auto half = win("halfline", {0, 0}, 60);
  auto hp = equivalence_classes(fields(half, ids(*half, {0, 1, 2, 3, 4, 5}), 10, 5));
  REQUIRE(hp.blocks.size() == 1);
  CHECK(hp.blocks[0].members.size() == 6);
  CHECK(hp.blocks[0].offsets == std::vector<std::int64_t>{0, -1, -2, -3, -4, -5});
  CHECK(hp.evidence == "WINDOW-EVIDENCE");

  auto line = win("line", {0, 0}, 60);
  auto lp = equivalence_classes(fields(line, ids(*line, {-2, -1, 0, 1, 2}), 10, 2));
  CHECK(lp.blocks.size() == 5);

  auto tree = win("tree:b=2", {0, 0}, 14);
  std::vector<VertexId> ts{tree->id_of({0, 0}), tree->id_of({1, 0}), tree->id_of({1, 1}),
                           tree->id_of({2, 1}), tree->id_of({2, 3})};
  auto tp = equivalence_classes(point_assigned_fields(tree, ts, make_schedule(12, 1), 4));
  CHECK(tp.blocks.size() == 5);
}

TEST_CASE("pseudometric axioms on random samples") {
  std::mt19937_64 rng(11);
  for (const char* spec : {"line", "halfline", "tree:b=2", "h_graph", "pendant_line", "stick"}) {
    checks::SuiteOptions opt{zoo::build(parse_generator_spec(spec)), std::nullopt, std::nullopt,
                             2, rng()};
    auto res = checks::run_suite("pseudometric", opt);
    CHECK_MESSAGE(res.passed(), spec);
    CHECK(res.checked > 0);
  }
}

TEST_CASE("on the halfline every dl-field is the point-assigned field up to a constant") {
  auto w = win("halfline", {0, 0}, 80);
  auto u = u_point_assigned(w, make_schedule(80, 4), 16).field;
  std::vector<VertexId> ray;
  for (std::int64_t t = 0; t <= 60; ++t) ray.push_back(w->id_of({t, 0}));
  auto b = busemann(w, ray, 60, 16).field;
  std::vector<VertexId> pts{w->id_of({20, 0}), w->id_of({40, 0}), w->id_of({64, 0})};
  auto h = horofunction(w, pts, 16, 20).field;
  for (const auto* f : {&b, &h}) {
    for (VertexId v = 0; v < u.size(); ++v) {
      CHECK((*f)[v] - u[v] == (*f)[0] - u[0]);
    }
  }
}

TEST_CASE("on the stick dl-fields agree with the point-assigned field up to the circumference") {
  auto sp = zoo::build(parse_generator_spec("stick:m=6,h=2"));
  auto w = materialize_window(sp, {0, 0}, 60);
  auto u = u_point_assigned(w, make_schedule(60, 3), 12).field;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto ray = checks::random_geodesic_ray(*w, 48, rng);
    auto b = busemann(w, ray, 48, 12).field;
    std::int64_t lo = 0, hi = 0;
    bool first = true;
    for (VertexId v = 0; v < u.size(); ++v) {
      if (!u.is_stable(v) || !b.is_stable(v)) continue;
      auto diff = b[v] - u[v];
      lo = first ? diff : std::min(lo, diff);
      hi = first ? diff : std::max(hi, diff);
      first = false;
    }
    CHECK_FALSE(first);
    CHECK(hi - lo <= 2 * (6 / 2));
  }
}
