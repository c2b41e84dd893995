#include <doctest.h>

#include "dlscape/dlfield.hpp"
#include "dlscape/error.hpp"
#include "dlscape/zoo.hpp"
#include "oracles.hpp"

using namespace dlscape;

namespace {

std::shared_ptr<const Window> win(const std::string& spec, Vertex base, int r) {
  return materialize_window(zoo::build(parse_generator_spec(spec)), base, r);
}

std::vector<VertexId> axis_ray(const Window& w, int sign, std::int64_t T) {
  std::vector<VertexId> out;
  for (std::int64_t t = 0; t <= T; ++t) out.push_back(w.id_of({sign * t, 0}));
  return out;
}

}  // namespace

TEST_CASE("u_r on the line") {
  auto w = win("line", {0, 0}, 20);
  auto f = u_r(w, 5, 5);
  for (std::int64_t x = -5; x <= 5; ++x) CHECK(f[w->id_of({x, 0})] == -std::abs(x));
  CHECK_THROWS_AS(u_r(w, 21, 5), ValidityError);
  CHECK_THROWS_AS(u_r(w, 5, 5, w->id_of({16, 0})), ValidityError);
  CHECK_NOTHROW(u_r(w, 5, 5, w->id_of({15, 0})));
}

TEST_CASE("u_r agrees with the explicit h_graph oracle") {
  auto w = win("h_graph", {0, 0}, 60);
  auto g = oracle::h_graph(120, 120);
  for (int r : {6, 12, 30, 48}) {
    auto f = u_r(w, r, 12);
    for (VertexId v = 0; v < f.size(); v += 3) {
      const auto& p = w->vertex(v);
      CHECK(f[v] == oracle::u_r(g, {0, 0}, {p.a, p.b}, r));
    }
  }
}

TEST_CASE("u^r is non-decreasing in r once r reaches d(x0,x) and bounded by d") {
  auto w = win("h_graph", {0, 0}, 72);
  const int zone = 18;
  std::vector<ScalarField> fields;
  for (int r = 0; r <= 72; ++r) fields.push_back(u_r(w, r, zone));
  for (VertexId v = 0; v < fields[0].size(); ++v) {
    const int d = w->dist_from_base(v);
    for (int r = d; r < 72; ++r) {
      CHECK(fields[r][v] <= fields[r + 1][v]);
      CHECK(fields[r + 1][v] <= d);
    }
  }
}

TEST_CASE("h_graph point-assigned values at p_k, x_k, q_k") {
  auto w = win("h_graph", {0, 0}, 150);
  auto sched = make_schedule(120, 6);
  auto res = u_point_assigned(w, sched, 24);
  const auto& f = res.field;
  for (std::int64_t k = 1; k <= 8; ++k) {
    auto p = w->id_of({k, 0});
    auto x = w->id_of({0, k});
    auto q = w->id_of({k, k});
    CHECK(f[p] == -k);
    CHECK(f[x] == k);
    CHECK(f[q] == 0);
    CHECK(f.is_stable(p));
    CHECK(f.is_stable(x));
    CHECK(f.is_stable(q));
  }
  CHECK(res.report.monotonicity_violations == 0);
  // p_5 already takes its limit at the first schedule entry.
  CHECK(f.last_change[w->id_of({5, 0})] == 6);
}

TEST_CASE("h_graph field on a radius-120 window") {
  auto w = win("h_graph", {0, 0}, 120);
  auto res = u_point_assigned(w, make_schedule(96, 4), 20);
  auto p5 = w->id_of({5, 0});
  CHECK(res.field[p5] == -5);
  CHECK(res.field.is_stable(p5));
}

TEST_CASE("serial and parallel point-assigned fields agree") {
  auto w = win("grid2d", {0, 0}, 40);
  auto sched = make_schedule(40, 2);
  auto a = u_point_assigned(w, sched, 10, std::nullopt, std::nullopt, kernels::Exec::serial);
  auto b = u_point_assigned(w, sched, 10, std::nullopt, std::nullopt, kernels::Exec::parallel);
  CHECK(a.field.values == b.field.values);
  CHECK(a.field.stable == b.field.stable);
  CHECK(a.field.last_change == b.field.last_change);
  CHECK(a.report.oscillation == b.report.oscillation);
}

TEST_CASE("schedules and zones are validated") {
  auto w = win("line", {0, 0}, 30);
  std::vector<std::int64_t> bad{4, 2};
  CHECK_THROWS_AS(u_point_assigned(w, bad, 5), DomainError);
  std::vector<std::int64_t> far{10, 31};
  CHECK_THROWS_AS(u_point_assigned(w, far, 5), ValidityError);
  CHECK_THROWS_AS(make_schedule(3, 0), DomainError);
  CHECK(make_schedule(10, 4) == std::vector<std::int64_t>{4, 8, 10});
}

TEST_CASE("Busemann functions on the line") {
  auto w = win("line", {0, 0}, 60);
  const std::int64_t T = 40;
  auto bp = busemann(w, axis_ray(*w, 1, T), T, 10, 10).field;
  auto bm = busemann(w, axis_ray(*w, -1, T), T, 10, 10).field;
  for (std::int64_t t = -10; t <= 10; ++t) {
    auto v = w->id_of({t, 0});
    CHECK(bp.is_stable(v));
    CHECK(bm.is_stable(v));
    CHECK(bp[v] - bm[v] == -2 * t);
  }
}

TEST_CASE("busemann rejects rays that are not geodesics") {
  auto w = win("line", {0, 0}, 30);
  std::vector<VertexId> zigzag{w->id_of({0, 0}), w->id_of({1, 0}), w->id_of({0, 0})};
  CHECK_THROWS(busemann(w, zigzag, 2, 5));
  std::vector<VertexId> jump{w->id_of({0, 0}), w->id_of({2, 0})};
  CHECK_THROWS(busemann(w, jump, 1, 5));
}

TEST_CASE("horofunction on the grid matches the l1 formula") {
  auto w = win("grid2d", {0, 0}, 60);
  std::vector<VertexId> pts;
  for (std::int64_t n = 1; n <= 25; ++n) pts.push_back(w->id_of({n, n}));
  auto res = horofunction(w, pts, 6, 10);
  const auto& f = res.field;
  for (VertexId v = 0; v < f.size(); ++v) {
    const auto& x = w->vertex(v);
    const std::int64_t n = 25;
    CHECK(f[v] == std::abs(x.a - n) + std::abs(x.b - n) - 2 * n);
  }
  std::vector<VertexId> flat{w->id_of({3, 0}), w->id_of({0, 3})};
  CHECK_THROWS_AS(horofunction(w, flat, 6), DomainError);
}

TEST_CASE("set limits of spheres reproduce the point-assigned field") {
  auto w = win("h_graph", {0, 0}, 90);
  std::vector<VertexSet> sets;
  std::vector<std::int64_t> shifts;
  for (int r = 6; r <= 60; r += 6) {
    sets.push_back(sphere(*w, r));
    shifts.push_back(r);
  }
  auto lim = dl_from_sets(w, sets, shifts, 15).field;
  auto pa = u_point_assigned(w, std::vector<std::int64_t>(shifts.begin(), shifts.end()), 15, 30).field;
  for (VertexId v = 0; v < lim.size(); ++v) {
    if (lim.is_stable(v) && pa.is_stable(v)) CHECK(lim[v] == pa[v]);
  }
  CHECK_THROWS_AS(dl_from_sets(w, sets, std::vector<std::int64_t>{1}, 15), DomainError);
}

TEST_CASE("gromov_check accepts dl-functions and rejects others") {
  auto w = win("h_graph", {0, 0}, 120);
  auto f = u_point_assigned(w, make_schedule(120, 6), 24).field;
  std::vector<std::int64_t> ts{-8, -4, 0, 2, 5};
  auto rep = gromov_check(f, ts);
  CHECK(rep.passed());
  CHECK(rep.verified > 0);

  auto lw = win("line", {0, 0}, 40);
  auto g = u_point_assigned(lw, make_schedule(40, 2), 10).field;
  for (auto& v : g.values) v *= 2;
  auto bad = gromov_check(g, std::vector<std::int64_t>{-6});
  CHECK_FALSE(bad.passed());
}

TEST_CASE("gromov_check uses the closed sublevel set") {
  // u = -|x| on the line: for t = -3 and x = 0, d(0, {u <= -3}) = 3.
  auto w = win("line", {0, 0}, 40);
  auto f = u_point_assigned(w, make_schedule(40, 2), 10).field;
  auto rep = gromov_check(f, std::vector<std::int64_t>{-3});
  CHECK(rep.passed());
  CHECK(rep.violations.empty());
  CHECK(rep.verified >= 7);
}

TEST_CASE("level sets and Lipschitz check") {
  auto w = win("h_graph", {0, 0}, 120);
  auto f = u_point_assigned(w, make_schedule(120, 6), 24).field;
  auto zero = level_set(f, 0);
  for (std::int64_t k = 1; k <= 8; ++k) CHECK(zero.contains(w->id_of({k, k})));
  CHECK_FALSE(lipschitz_violation(f).has_value());
  auto g = f;
  g.values[w->id_of({1, 0})] += 3;
  CHECK(lipschitz_violation(g).has_value());
}

TEST_CASE("u^r fields converge to the point-assigned field") {
  auto w = win("line", {0, 0}, 40);
  std::vector<ScalarField> seq;
  for (int r = 10; r <= 40; r += 10) seq.push_back(u_r(w, r, 10));
  auto lim = u_point_assigned(w, make_schedule(40, 10), 10).field;
  auto rep = stability_check(seq, lim, std::vector<std::int64_t>{-5, -1});
  CHECK(rep.passed());
  CHECK(rep.non_convergent.empty());
}
