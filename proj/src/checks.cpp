#include "dlscape/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "dlscape/error.hpp"
#include "dlscape/kernels.hpp"

namespace dlscape::checks {

namespace {

constexpr const char* kModule = "checks";
constexpr std::size_t kMaxWitnesses = 10;

struct Context {
  std::shared_ptr<const Window> window;
  int radius;
  int zone;
  std::size_t trials;
  std::mt19937_64 rng;
};

Context make_context(const SuiteOptions& opt, std::size_t default_trials) {
  auto desk = desk_config(opt.space.spec());
  Context c{nullptr, opt.radius.value_or(desk.radius), opt.zone.value_or(desk.zone),
            opt.trials.value_or(default_trials), std::mt19937_64(opt.seed)};
  if (c.zone < 1 || 2 * c.zone > c.radius) {
    throw DomainError(kModule, "zone", "suites need 1 <= zone and 2 * zone <= radius");
  }
  c.window = materialize_window(opt.space, opt.space.generator().default_base(), c.radius);
  return c;
}

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<std::int64_t> default_schedule(std::int64_t r_max) {
  return make_schedule(r_max, std::max<std::int64_t>(1, r_max / 20));
}

void witness(SuiteResult& res, io::json w) {
  ++res.violations;
  if (res.witnesses.size() < kMaxWitnesses) res.witnesses.push_back(std::move(w));
}

io::json vj(const Window& w, VertexId v) { return io::vertex_to_json(w.vertex(v)); }

// Distinct random vertices of B_a(x0), base first.
std::vector<VertexId> sample_ball(const Context& c, std::mt19937_64& rng, int a, std::size_t k) {
  const auto n = c.window->ball_size(a);
  std::vector<VertexId> ids(n);
  for (VertexId v = 0; v < n; ++v) ids[v] = v;
  std::shuffle(ids.begin() + 1, ids.end(), rng);
  ids.resize(std::min(k, ids.size()));
  return ids;
}

SuiteResult monotonicity(const SuiteOptions& opt) {
  auto c = make_context(opt, 10000);
  SuiteResult res{"monotonicity"};
  res.trials = c.trials;
  const auto& w = *c.window;
  const auto zone_n = w.ball_size(c.zone);
  std::map<int, ScalarField> cache;
  auto field = [&](int r) -> const ScalarField& {
    auto it = cache.find(r);
    if (it == cache.end()) it = cache.emplace(r, u_r(c.window, r, c.zone)).first;
    return it->second;
  };
  for (std::size_t t = 0; t < c.trials; ++t) {
    auto x = static_cast<VertexId>(uniform(c.rng, 0, zone_n - 1));
    const int d = w.dist_from_base(x);
    if (d >= c.radius) continue;
    auto r1 = static_cast<int>(uniform(c.rng, d, c.radius - 1));
    auto r2 = static_cast<int>(uniform(c.rng, r1 + 1, c.radius));
    auto a = field(r1)[x];
    auto b = field(r2)[x];
    ++res.checked;
    if (!(a <= b && b <= d)) {
      witness(res, {{"x", vj(w, x)}, {"r1", r1}, {"r2", r2}, {"u_r1", a}, {"u_r2", b}, {"d", d}});
    }
  }
  res.summary["radii_evaluated"] = cache.size();
  return res;
}

SuiteResult minimality(const SuiteOptions& opt) {
  auto c = make_context(opt, 200);
  SuiteResult res{"minimality"};
  res.trials = c.trials;
  const auto& w = *c.window;
  auto u = u_point_assigned(c.window, default_schedule(c.radius), c.zone).field;
  const std::int64_t T = c.radius - c.zone;
  std::size_t rays = 0, horos = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    auto ray = random_geodesic_ray(w, T, c.rng);
    ScalarField b;
    if (t % 2 == 0) {
      b = busemann(c.window, ray, T, c.zone).field;
      ++rays;
    } else {
      std::vector<VertexId> points;
      for (std::int64_t s = 1; s < T; ++s) {
        if (uniform(c.rng, 0, 2) == 0) points.push_back(ray[static_cast<std::size_t>(s)]);
      }
      points.push_back(ray.back());
      b = horofunction(c.window, points, c.zone).field;
      ++horos;
    }
    const auto offset = b[Window::base_id()];
    for (VertexId v = 0; v < u.size(); ++v) {
      if (!u.is_stable(v) || !b.is_stable(v)) {
        ++res.inconclusive;
        continue;
      }
      ++res.checked;
      if (u[v] > b[v] - offset) {
        witness(res, {{"trial", t}, {"x", vj(w, v)}, {"u", u[v]}, {"normalized", b[v] - offset}});
      }
    }
  }
  res.summary["rays"] = rays;
  res.summary["horosequences"] = horos;
  if (opt.space.spec().name == "line") {
    std::vector<VertexId> plus, minus;
    for (std::int64_t s = 0; s <= T; ++s) {
      plus.push_back(w.id_of({s, 0}));
      minus.push_back(w.id_of({-s, 0}));
    }
    auto bp = busemann(c.window, plus, T, c.zone).field;
    auto bm = busemann(c.window, minus, T, c.zone).field;
    bool equal = true;
    for (VertexId v = 0; v < u.size(); ++v) {
      if (u.is_stable(v) && bp.is_stable(v) && bm.is_stable(v)) {
        equal = equal && u[v] == std::min(bp[v], bm[v]);
      }
    }
    res.summary["line_equality"] = equal;
    if (!equal) witness(res, {{"line_equality", false}});
  }
  return res;
}

struct AnchoredFields {
  std::vector<VertexId> anchors;
  std::vector<ScalarField> fields;
};

AnchoredFields anchored_fields(Context& c, std::size_t count) {
  const int a = std::min(c.zone, c.radius / 3);
  AnchoredFields out;
  out.anchors = sample_ball(c, c.rng, a, count);
  out.fields = point_assigned_fields(c.window, out.anchors, default_schedule(c.radius - a), c.zone);
  return out;
}

SuiteResult anti_triangle(const SuiteOptions& opt) {
  auto c = make_context(opt, 500);
  SuiteResult res{"anti-triangle"};
  res.trials = c.trials;
  const auto& w = *c.window;
  auto pool = anchored_fields(c, 10);
  const auto zone_n = w.ball_size(c.zone);
  for (std::size_t t = 0; t < c.trials; ++t) {
    auto i = uniform(c.rng, 0, pool.anchors.size() - 1);
    auto j = uniform(c.rng, 0, pool.anchors.size() - 1);
    auto z = static_cast<VertexId>(uniform(c.rng, 0, zone_n - 1));
    const auto& ux = pool.fields[i];
    const auto& uy = pool.fields[j];
    const auto y = pool.anchors[j];
    if (!ux.is_stable(y) || !ux.is_stable(z) || !uy.is_stable(z)) {
      ++res.inconclusive;
      continue;
    }
    ++res.checked;
    if (!anti_triangle_check(ux, uy, y, z)) {
      witness(res, {{"x", vj(w, pool.anchors[i])},
                    {"y", vj(w, y)},
                    {"z", vj(w, z)},
                    {"ux_y", ux[y]},
                    {"uy_z", uy[z]},
                    {"ux_z", ux[z]}});
    }
  }
  return res;
}

SuiteResult pseudometric(const SuiteOptions& opt) {
  auto c = make_context(opt, 3);
  SuiteResult res{"pseudometric"};
  res.trials = c.trials;
  const auto& w = *c.window;
  io::json blocks = io::json::array();
  for (std::size_t t = 0; t < c.trials; ++t) {
    auto pool = anchored_fields(c, 8);
    auto rho = rho_matrix(pool.fields);
    auto d = pairwise_dist(w, pool.anchors);
    auto axioms = check_pseudometric_axioms(rho, d);
    res.checked += axioms.triples_checked;
    for (const auto& v : axioms.violations) witness(res, {{"trial", t}, {"axiom", v}});
    for (std::size_t i = 0; i < pool.fields.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.fields.size(); ++j) {
        auto lip = base_lipschitz_check(pool.fields[i], pool.fields[j]);
        ++res.checked;
        if (!lip.holds) {
          witness(res, {{"trial", t},
                        {"x0", vj(w, pool.anchors[i])},
                        {"x1", vj(w, pool.anchors[j])},
                        {"sup_difference", lip.sup_difference},
                        {"distance", lip.base_distance}});
        }
      }
    }
    try {
      auto partition = equivalence_classes(pool.fields);
      blocks.push_back(partition.blocks.size());
    } catch (const std::logic_error& e) {
      witness(res, {{"trial", t}, {"partition", e.what()}});
    }
  }
  res.summary["blocks_per_trial"] = std::move(blocks);
  return res;
}

SuiteResult gromov(const SuiteOptions& opt) {
  auto c = make_context(opt, 4);
  SuiteResult res{"gromov"};
  res.trials = c.trials;
  const auto& w = *c.window;
  const std::int64_t T = c.radius - c.zone;
  std::vector<ScalarField> fields;
  fields.push_back(u_point_assigned(c.window, default_schedule(c.radius), c.zone).field);
  for (std::size_t t = 0; t < c.trials; ++t) {
    auto ray = random_geodesic_ray(w, T, c.rng);
    fields.push_back(busemann(c.window, ray, T, c.zone).field);
    std::vector<VertexId> points;
    for (std::int64_t s = c.zone; s <= T; s += 3) points.push_back(ray[static_cast<std::size_t>(s)]);
    fields.push_back(horofunction(c.window, points, c.zone).field);
    // Two rays together: the limit is the minimum of their Busemann functions.
    const std::int64_t Ts = c.radius - 2 * c.zone;
    auto other = random_geodesic_ray(w, Ts, c.rng);
    std::vector<VertexSet> sets;
    std::vector<std::int64_t> shifts;
    for (std::int64_t s = 1; s <= Ts; ++s) {
      sets.emplace_back(std::vector<VertexId>{ray[static_cast<std::size_t>(s)],
                                              other[static_cast<std::size_t>(s)]});
      shifts.push_back(s);
    }
    fields.push_back(dl_from_sets(c.window, sets, shifts, c.zone).field);
  }
  io::json kinds = io::json::array();
  for (const auto& f : fields) {
    auto rep = gromov_check(f, t_samples(f));
    res.checked += rep.verified;
    res.inconclusive += rep.inconclusive;
    kinds.push_back({{"kind", to_string(f.kind)},
                     {"checked", rep.checked},
                     {"verified", rep.verified},
                     {"inconclusive", rep.inconclusive}});
    for (const auto& v : rep.violations) {
      witness(res, {{"kind", to_string(f.kind)},
                    {"x", vj(w, v.vertex)},
                    {"t", v.t},
                    {"value", v.value},
                    {"distance", v.distance}});
    }
  }
  res.summary["fields"] = std::move(kinds);
  return res;
}

SuiteResult corays(const SuiteOptions& opt) {
  auto c = make_context(opt, 200);
  SuiteResult res{"corays"};
  const auto& w = *c.window;
  auto u = u_point_assigned(c.window, default_schedule(c.radius), c.zone).field;
  std::vector<VertexId> stable;
  for (VertexId v = 0; v < u.size(); ++v) {
    if (u.is_stable(v)) stable.push_back(v);
  }
  if (stable.size() > c.trials) {
    std::shuffle(stable.begin(), stable.end(), c.rng);
    stable.resize(c.trials);
    std::sort(stable.begin(), stable.end());
  }
  res.trials = stable.size();
  std::size_t rays = 0, equalities = 0;
  for (auto x : stable) {
    auto trace = trace_corays(u, x, 16);
    for (auto v : trace.dead_ends) witness(res, {{"dead_end", vj(w, v)}, {"start", vj(w, x)}});
    if (trace.rays.empty()) {
      witness(res, {{"no_coray", vj(w, x)}});
      continue;
    }
    for (const auto& ray : trace.rays) {
      ++rays;
      ++res.checked;
      if (!verify_gradient(ray, u)) witness(res, {{"gradient_failed", io::coray_to_json(ray, u)}});
    }
    auto rep = representation_check(u, x, trace.rays);
    if (rep.verdict == RepresentationVerdict::violated) {
      witness(res, {{"representation_violated", vj(w, x)}});
    } else if (rep.verdict == RepresentationVerdict::inconclusive) {
      ++res.inconclusive;
    }
    equalities += rep.equality_attained;
  }
  res.summary["corays"] = rays;
  res.summary["equality_attained"] = equalities;
  return res;
}

gh::FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = static_cast<std::int64_t>(uniform(rng, 1, 8));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return gh::make_space(std::move(d), uniform(rng, 0, n - 1));
}

SuiteResult gh_roundtrip(const SuiteOptions& opt) {
  SuiteResult res{"gh-roundtrip"};
  std::mt19937_64 rng(opt.seed);
  res.trials = opt.trials.value_or(50);
  for (std::size_t t = 0; t < res.trials; ++t) {
    auto x = random_space(rng, uniform(rng, 1, 6));
    auto y = random_space(rng, uniform(rng, 1, 6));
    auto b = gh::gh_bounds(x, y);
    const auto dstar = b.witness.distortion;
    ++res.checked;
    if (!b.exact) ++res.inconclusive;
    if (!(b.lower <= b.upper) || !gh::is_pointed_correspondence(x, y, b.witness.pairs)) {
      witness(res, {{"trial", t}, {"sandwich", false}});
      continue;
    }
    auto f = gh::build_eps_isometry(x, y, b.witness);
    if (f.dis > dstar || f.net_eps > dstar) {
      witness(res, {{"trial", t}, {"dis", f.dis}, {"net", f.net_eps}, {"distortion", dstar}});
      continue;
    }
    const auto eps = std::max(f.dis, f.net_eps);
    auto back = gh::corr_from_isometry(x, y, f, eps);
    if (back.distortion > 3 * eps || Rational(back.distortion) < b.lower) {
      witness(res, {{"trial", t}, {"eps", eps}, {"roundtrip_distortion", back.distortion}});
    }
  }
  return res;
}

SuiteResult window_invariants(const SuiteOptions& opt) {
  auto c = make_context(opt, 1);
  SuiteResult res{"window-invariants"};
  const auto& w = *c.window;
  res.trials = 1;
  auto fail = [&](const std::string& what, VertexId v) {
    witness(res, {{"invariant", what}, {"vertex", vj(w, v)}});
  };
  std::vector<Vertex> nbrs;
  for (VertexId v = 0; v < w.size(); ++v) {
    ++res.checked;
    const auto d = w.dist_from_base(v);
    if (v > 0 && d < w.dist_from_base(v - 1)) fail("breadth-first order", v);
    if (d > w.radius()) fail("outside radius", v);
    bool parent = v == 0;
    for (auto nb : w.neighbors(v)) {
      const auto dn = w.dist_from_base(nb);
      if (std::abs(dn - d) > 1) fail("edge spans more than one level", v);
      parent = parent || dn == d - 1;
      auto back = w.neighbors(nb);
      if (std::find(back.begin(), back.end(), v) == back.end()) fail("asymmetric adjacency", v);
    }
    if (!parent) fail("no neighbour one level closer", v);
    if (d < w.radius()) {
      nbrs.clear();
      w.space().generator().neighbors(w.vertex(v), nbrs);
      if (nbrs.size() != w.neighbors(v).size()) fail("interior vertex missing neighbours", v);
    }
  }
  if (w.dist_from_base(0) != 0) fail("base distance", 0);
  auto bfs = dist_field(w, VertexSet({Window::base_id()}));
  for (VertexId v = 0; v < w.size(); ++v) {
    if (bfs[v] != w.dist_from_base(v)) fail("dist_field disagrees with enumeration", v);
  }
  for (int r = 0; r <= w.radius(); ++r) {
    auto s = sphere(w, r);
    for (auto v : s) {
      if (w.dist_from_base(v) != r) fail("sphere membership", v);
    }
    if (w.ball_size(r) - (r == 0 ? 0 : w.ball_size(r - 1)) != s.size()) fail("ball size", 0);
  }
  res.summary["vertices"] = w.size();
  res.summary["edges"] = w.edges().size();
  return res;
}

using SuiteFn = std::function<SuiteResult(const SuiteOptions&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"monotonicity", monotonicity},   {"minimality", minimality},
      {"anti-triangle", anti_triangle}, {"pseudometric", pseudometric},
      {"gromov", gromov},               {"corays", corays},
      {"gh-roundtrip", gh_roundtrip},   {"window-invariants", window_invariants},
  };
  return suites;
}

}  // namespace

DeskConfig desk_config(const GeneratorSpec& spec) {
  const auto& name = spec.name;
  if (name == "tree") {
    const auto b = spec.param("b");
    if (b == 1) return {80, 16};
    const int radius = std::max(4, static_cast<int>(17.0 / std::log2(static_cast<double>(b))) - 1);
    return {radius, std::max(1, radius / 4)};
  }
  if (name == "grid2d") return {40, 10};
  if (name == "h_graph") return {96, 16};
  if (name == "cylinder" || name == "stick") return {60, 12};
  return {80, 16};
}

io::json SuiteResult::to_json() const {
  return {{"suite", suite},
          {"passed", passed()},
          {"trials", trials},
          {"checked", checked},
          {"violations", violations},
          {"inconclusive", inconclusive},
          {"summary", summary},
          {"witnesses", witnesses}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw DomainError(kModule, "suite", "unknown suite '" + name + "' (" + known + ")");
  }
  return it->second(options);
}

std::vector<VertexId> random_geodesic_ray(const Window& window, std::int64_t T,
                                          std::mt19937_64& rng) {
  if (T < 0 || T > window.radius()) {
    throw ValidityError(kModule, "radius", "ray length must lie in [0, R]");
  }
  // reach[v]: longest outward path from v inside the window.
  std::vector<std::int32_t> reach(window.size(), 0);
  for (auto v = static_cast<std::int64_t>(window.size()) - 1; v >= 0; --v) {
    const auto id = static_cast<VertexId>(v);
    for (auto nb : window.neighbors(id)) {
      if (window.dist_from_base(nb) == window.dist_from_base(id) + 1) {
        reach[id] = std::max(reach[id], reach[nb] + 1);
      }
    }
  }
  if (reach[Window::base_id()] < T) {
    throw ValidityError(kModule, "radius", "no geodesic ray of length " + std::to_string(T) +
                                               " leaves the base inside the window");
  }
  std::vector<VertexId> ray{Window::base_id()};
  std::vector<VertexId> next;
  for (std::int64_t t = 1; t <= T; ++t) {
    const auto cur = ray.back();
    next.clear();
    for (auto nb : window.neighbors(cur)) {
      if (window.dist_from_base(nb) == window.dist_from_base(cur) + 1 && reach[nb] >= T - t) {
        next.push_back(nb);
      }
    }
    ray.push_back(next[uniform(rng, 0, next.size() - 1)]);
  }
  return ray;
}

std::vector<std::int64_t> t_samples(const ScalarField& field, std::size_t count) {
  std::int64_t lo = 0, hi = 0;
  bool any = false;
  for (VertexId v = 0; v < field.size(); ++v) {
    if (!field.is_stable(v)) continue;
    lo = any ? std::min(lo, field[v]) : field[v];
    hi = any ? std::max(hi, field[v]) : field[v];
    any = true;
  }
  std::vector<std::int64_t> out;
  if (!any) return out;
  for (std::size_t k = 0; k < count; ++k) {
    auto t = lo + static_cast<std::int64_t>((hi - lo) * static_cast<std::int64_t>(k) /
                                            static_cast<std::int64_t>(count));
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  return out;
}

}  // namespace dlscape::checks
