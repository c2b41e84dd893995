#include "dlscape/gh.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dlscape/error.hpp"
#include "dlscape/kernels.hpp"

namespace dlscape::gh {

namespace {

constexpr const char* kModule = "gh";
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

std::int64_t abs_diff(std::int64_t a, std::int64_t b) { return a > b ? a - b : b - a; }

void require_same_scale(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (!(x.scale == y.scale)) {
    throw DomainError(kModule, "scale",
                      "spaces must share a scale (" + x.scale.to_string() + " vs " +
                          y.scale.to_string() + "); use to_common_scale");
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const FiniteMetricSpace& x, const FiniteMetricSpace& y, std::uint64_t budget)
      : x_(x), y_(y), budget_(budget) {
    for (std::size_t i = 0; i < x.n; ++i) {
      if (i != x.base) vars_.push_back({true, i});
    }
    for (std::size_t j = 0; j < y.n; ++j) {
      if (j != y.base) vars_.push_back({false, j});
    }
    assigned_.assign(vars_.size(), false);
    pairs_.push_back({x.base, y.base});
  }

  Correspondence run() {
    seed_upper_bound();
    search(0);
    Correspondence out;
    out.pairs = best_pairs_;
    std::sort(out.pairs.begin(), out.pairs.end());
    out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
    out.distortion = best_;
    out.lower_bound_proved = !exhausted_;
    return out;
  }

 private:
  struct Var {
    bool forward;  // f(x) when true, g(y) otherwise
    std::size_t index;
  };

  Pair pair_for(const Var& v, std::size_t value) const {
    return v.forward ? Pair{v.index, value} : Pair{value, v.index};
  }
  std::size_t domain(const Var& v) const { return v.forward ? y_.n : x_.n; }

  std::int64_t added_cost(const Pair& p) const {
    std::int64_t worst = 0;
    for (const auto& q : pairs_) {
      worst = std::max(worst, abs_diff(x_.at(p.first, q.first), y_.at(p.second, q.second)));
    }
    return worst;
  }

  // Greedy completion: nearest-distortion choice per variable in order.
  void seed_upper_bound() {
    auto saved = pairs_;
    std::int64_t cur = 0;
    for (const auto& v : vars_) {
      std::int64_t best_cost = kInf;
      std::size_t best_value = 0;
      for (std::size_t c = 0; c < domain(v); ++c) {
        auto cost = added_cost(pair_for(v, c));
        if (cost < best_cost) {
          best_cost = cost;
          best_value = c;
        }
      }
      cur = std::max(cur, best_cost);
      pairs_.push_back(pair_for(v, best_value));
    }
    best_ = cur;
    best_pairs_ = pairs_;
    pairs_ = std::move(saved);
    // The search below must be able to replace the greedy witness by an
    // equally good one found earlier in index order.
    greedy_ = true;
  }

  // Chooses the unassigned variable with the fewest viable values; returns
  // false if some variable has no value below the bound.
  bool pick(std::int64_t bound, std::size_t& chosen) const {
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    bool any = false;
    for (std::size_t k = 0; k < vars_.size(); ++k) {
      if (assigned_[k]) continue;
      std::size_t viable = 0;
      for (std::size_t c = 0; c < domain(vars_[k]); ++c) {
        if (added_cost(pair_for(vars_[k], c)) < bound) ++viable;
      }
      if (viable == 0) return false;
      if (viable < fewest) {
        fewest = viable;
        chosen = k;
        any = true;
      }
    }
    if (!any) chosen = vars_.size();
    return true;
  }

  std::int64_t bound() const { return greedy_ ? best_ + 1 : best_; }

  void search(std::int64_t cur) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    std::size_t k = 0;
    if (!pick(bound(), k)) return;
    if (k == vars_.size()) {
      if (cur < best_ || greedy_) {
        best_ = cur;
        best_pairs_ = pairs_;
        greedy_ = false;
      }
      return;
    }
    assigned_[k] = true;
    const auto& v = vars_[k];
    for (std::size_t c = 0; c < domain(v) && !exhausted_; ++c) {
      auto p = pair_for(v, c);
      auto next = std::max(cur, added_cost(p));
      if (next >= bound()) continue;
      pairs_.push_back(p);
      search(next);
      pairs_.pop_back();
    }
    assigned_[k] = false;
  }

  const FiniteMetricSpace& x_;
  const FiniteMetricSpace& y_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  bool greedy_ = false;
  std::vector<Var> vars_;
  std::vector<bool> assigned_;
  std::vector<Pair> pairs_;
  std::vector<Pair> best_pairs_;
  std::int64_t best_ = kInf;
};

}  // namespace

void validate(const FiniteMetricSpace& s) {
  if (s.n == 0) throw DomainError(kModule, "n", "space must have at least one point");
  if (s.dist.size() != s.n * s.n) {
    throw DomainError(kModule, "dist", "expected an " + std::to_string(s.n) + "x" +
                                           std::to_string(s.n) + " matrix");
  }
  if (s.base >= s.n) throw DomainError(kModule, "base", "base index out of range");
  if (s.scale.num <= 0) throw DomainError(kModule, "scale", "scale must be positive");
  auto pair = [](std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (std::size_t i = 0; i < s.n; ++i) {
    if (s.at(i, i) != 0) throw DomainError(kModule, "dist", "nonzero diagonal at " + pair(i, i));
    for (std::size_t j = 0; j < s.n; ++j) {
      if (s.at(i, j) != s.at(j, i)) throw DomainError(kModule, "dist", "asymmetric at " + pair(i, j));
      if (i != j && s.at(i, j) <= 0) {
        throw DomainError(kModule, "dist", "non-positive distance at " + pair(i, j));
      }
    }
  }
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t j = 0; j < s.n; ++j) {
      for (std::size_t k = 0; k < s.n; ++k) {
        if (s.at(i, k) > s.at(i, j) + s.at(j, k)) {
          throw DomainError(kModule, "dist",
                            "triangle inequality fails for triple (" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + ")");
        }
      }
    }
  }
}

FiniteMetricSpace make_space(std::vector<std::vector<std::int64_t>> dist, std::size_t base,
                             Rational scale) {
  FiniteMetricSpace s;
  s.n = dist.size();
  s.base = base;
  s.scale = scale;
  for (const auto& row : dist) {
    if (row.size() != s.n) throw DomainError(kModule, "dist", "matrix rows must have length n");
    s.dist.insert(s.dist.end(), row.begin(), row.end());
  }
  validate(s);
  return s;
}

FiniteMetricSpace from_window(const Window& window, std::span<const VertexId> sample) {
  FiniteMetricSpace s;
  s.n = sample.size();
  s.dist = pairwise_dist(window, sample);
  s.base = 0;
  // Graph distances are hops * scale; here real = dist / scale.
  const auto& sc = window.space().scale();
  s.scale = Rational(sc.den, sc.num);
  validate(s);
  return s;
}

std::pair<FiniteMetricSpace, FiniteMetricSpace> to_common_scale(const FiniteMetricSpace& x,
                                                                const FiniteMetricSpace& y) {
  const auto l = std::lcm(x.scale.num, y.scale.num);
  auto rescale = [l](const FiniteMetricSpace& s) {
    FiniteMetricSpace out = s;
    const auto factor = s.scale.den * (l / s.scale.num);
    for (auto& d : out.dist) d *= factor;
    out.scale = Rational(l);
    return out;
  };
  return {rescale(x), rescale(y)};
}

bool is_pointed_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               std::span<const Pair> pairs) {
  std::vector<bool> cx(x.n, false), cy(y.n, false);
  bool has_base = false;
  for (const auto& [i, j] : pairs) {
    if (i >= x.n || j >= y.n) return false;
    cx[i] = true;
    cy[j] = true;
    has_base = has_base || (i == x.base && j == y.base);
  }
  return has_base && std::all_of(cx.begin(), cx.end(), [](bool b) { return b; }) &&
         std::all_of(cy.begin(), cy.end(), [](bool b) { return b; });
}

std::int64_t distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        std::span<const Pair> pairs) {
  std::int64_t worst = 0;
  for (const auto& p : pairs) {
    for (const auto& q : pairs) {
      worst = std::max(worst, abs_diff(x.at(p.first, q.first), y.at(p.second, q.second)));
    }
  }
  return worst;
}

Correspondence min_distortion_correspondence(const FiniteMetricSpace& x,
                                             const FiniteMetricSpace& y,
                                             const SearchOptions& options) {
  validate(x);
  validate(y);
  require_same_scale(x, y);
  if (x.n > options.max_points || y.n > options.max_points) {
    throw ResourceError(kModule, "max_points",
                        "spaces of size " + std::to_string(x.n) + " and " + std::to_string(y.n) +
                            " exceed the search limit of " + std::to_string(options.max_points));
  }
  return BranchAndBound(x, y, options.node_budget).run();
}

GhBounds gh_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                   const SearchOptions& options) {
  GhBounds b;
  b.witness = min_distortion_correspondence(x, y, options);
  b.lower = Rational(b.witness.distortion, 2);
  b.upper = Rational(b.witness.distortion);
  b.exact = b.witness.lower_bound_proved;
  return b;
}

std::int64_t map_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                            std::span<const std::size_t> map) {
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t j = 0; j < x.n; ++j) {
      worst = std::max(worst, abs_diff(x.at(i, j), y.at(map[i], map[j])));
    }
  }
  return worst;
}

std::int64_t net_radius(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        std::span<const std::size_t> map) {
  std::int64_t worst = 0;
  for (std::size_t j = 0; j < y.n; ++j) {
    std::int64_t nearest = kInf;
    for (std::size_t i = 0; i < x.n; ++i) nearest = std::min(nearest, y.at(map[i], j));
    worst = std::max(worst, nearest);
  }
  return worst;
}

EpsIsometry build_eps_isometry(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               const Correspondence& corr) {
  if (!is_pointed_correspondence(x, y, corr.pairs)) {
    throw DomainError(kModule, "corr", "not a pointed correspondence");
  }
  EpsIsometry f;
  f.map.assign(x.n, y.n);
  for (const auto& [i, j] : corr.pairs) f.map[i] = std::min(f.map[i], j);
  f.map[x.base] = y.base;
  f.dis = map_distortion(x, y, f.map);
  f.net_eps = net_radius(x, y, f.map);
  return f;
}

Correspondence corr_from_isometry(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                  const EpsIsometry& f, std::int64_t eps) {
  if (f.map.size() != x.n || std::any_of(f.map.begin(), f.map.end(),
                                         [&](std::size_t j) { return j >= y.n; })) {
    throw DomainError(kModule, "map", "map table does not match the spaces");
  }
  if (f.map[x.base] != y.base) throw DomainError(kModule, "map", "map must send base to base");
  const auto dis = map_distortion(x, y, f.map);
  const auto net = net_radius(x, y, f.map);
  if (dis > eps || net > eps) {
    throw DomainError(kModule, "eps",
                      "map is not an eps-isometry for eps = " + std::to_string(eps) +
                          " (dis " + std::to_string(dis) + ", net " + std::to_string(net) + ")");
  }
  Correspondence c;
  for (std::size_t i = 0; i < x.n; ++i) {
    for (std::size_t j = 0; j < y.n; ++j) {
      if (y.at(f.map[i], j) <= eps) c.pairs.push_back({i, j});
    }
  }
  c.distortion = distortion(x, y, c.pairs);
  if (c.distortion > 3 * eps) {
    throw std::logic_error("corr_from_isometry: distortion exceeds 3 eps");
  }
  return c;
}

EpsDeltaVerdict eps_delta_certificate(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                      std::span<const std::size_t> net_x,
                                      std::span<const std::size_t> net_y, std::int64_t eps,
                                      std::int64_t delta) {
  require_same_scale(x, y);
  EpsDeltaVerdict v;
  if (net_x.size() != net_y.size() || net_x.empty()) {
    throw DomainError(kModule, "nets", "nets must be non-empty and of equal length");
  }
  for (auto i : net_x) {
    if (i >= x.n) throw DomainError(kModule, "net_x", "index out of range");
  }
  for (auto j : net_y) {
    if (j >= y.n) throw DomainError(kModule, "net_y", "index out of range");
  }
  if (net_x[0] != x.base || net_y[0] != y.base) {
    v.reason = "first net points must be the bases";
    v.witness = Pair{0, 0};
    return v;
  }
  auto check_net = [&](const FiniteMetricSpace& s, std::span<const std::size_t> net,
                       const char* name) -> bool {
    for (std::size_t p = 0; p < s.n; ++p) {
      std::int64_t nearest = kInf;
      std::size_t at = 0;
      for (std::size_t k = 0; k < net.size(); ++k) {
        if (s.at(p, net[k]) < nearest) {
          nearest = s.at(p, net[k]);
          at = k;
        }
      }
      if (nearest > eps) {
        v.reason = std::string(name) + " is not an eps-net: point " + std::to_string(p) +
                   " is " + std::to_string(nearest) + " from the net";
        v.witness = Pair{p, at};
        return false;
      }
    }
    return true;
  };
  if (!check_net(x, net_x, "net_x") || !check_net(y, net_y, "net_y")) return v;
  for (std::size_t i = 0; i < net_x.size(); ++i) {
    for (std::size_t j = 0; j < net_x.size(); ++j) {
      auto diff = abs_diff(x.at(net_x[i], net_x[j]), y.at(net_y[i], net_y[j]));
      if (diff >= delta) {
        v.reason = "net distances differ by " + std::to_string(diff) + " >= delta";
        v.witness = Pair{i, j};
        return v;
      }
    }
  }
  v.certified = true;
  v.bound = Rational(2 * eps + delta);
  return v;
}

Vertex VertexMap::apply(const Vertex& v) const {
  switch (kind) {
    case Kind::identity:
      return v;
    case Kind::spine:
      return {v.a, 0};
    case Kind::scale:
      return {v.a * factor, v.b * factor};
  }
  return v;
}

std::string VertexMap::to_string() const {
  switch (kind) {
    case Kind::identity:
      return "identity";
    case Kind::spine:
      return "spine";
    case Kind::scale:
      return "scale:" + std::to_string(factor);
  }
  return "identity";
}

VertexMap parse_vertex_map(const std::string& text) {
  VertexMap m;
  if (text == "identity") return m;
  if (text == "spine") {
    m.kind = VertexMap::Kind::spine;
    return m;
  }
  if (text.rfind("scale:", 0) == 0) {
    m.kind = VertexMap::Kind::scale;
    try {
      std::size_t used = 0;
      m.factor = std::stoll(text.substr(6), &used);
      if (used != text.size() - 6 || m.factor < 1) throw std::invalid_argument("factor");
    } catch (const std::exception&) {
      throw DomainError(kModule, "map", "scale factor must be a positive integer: " + text);
    }
    return m;
  }
  throw DomainError(kModule, "map", "unknown map '" + text + "' (identity, spine, scale:K)");
}

PaGhReport pa_gh_experiment(const PaGhConfig& config) {
  if (config.eps.num <= 0) throw DomainError(kModule, "eps", "eps must be positive");
  if (config.zone < 0 || 2 * config.zone > config.radius) {
    throw DomainError(kModule, "zone", "need 0 <= 2 * zone <= radius");
  }
  const auto& sx = config.space_x.scale();
  const auto& sy = config.space_y.scale();
  PaGhReport rep;
  rep.common_scale = std::lcm(std::lcm(sx.den, sy.den), config.eps.den);
  const auto L = rep.common_scale;
  const auto ux = sx.num * (L / sx.den);  // common units per X hop
  const auto uy = sy.num * (L / sy.den);
  const auto eps = config.eps.num * (L / config.eps.den);

  // Y window covers the same real radius and zone as X.
  auto hops_y = [&](std::int64_t hops_x) { return (hops_x * ux + uy - 1) / uy; };
  const int radius_y = static_cast<int>(hops_y(config.radius));
  const int zone_y = static_cast<int>(hops_y(config.zone));

  auto wx = materialize_window(config.space_x, config.space_x.generator().default_base(),
                               config.radius);
  auto wy = materialize_window(config.space_y, config.space_y.generator().default_base(),
                               radius_y);

  const auto x_zone = static_cast<VertexId>(wx->ball_size(config.zone));
  std::vector<VertexId> image(x_zone);
  int image_reach = 0;
  for (VertexId v = 0; v < x_zone; ++v) {
    auto target = config.map.apply(wx->vertex(v));
    auto id = wy->find(target);
    if (!id) {
      throw ValidityError(kModule, "map",
                          "image (" + dlscape::to_string(target) + ") lies outside the Y window");
    }
    image[v] = *id;
    image_reach = std::max(image_reach, wy->dist_from_base(*id));
  }
  if (image[0] != Window::base_id()) {
    throw DomainError(kModule, "map", "map must send the X base to the Y base");
  }
  const int field_zone_y = std::max(zone_y, image_reach);
  if (2 * field_zone_y > radius_y) {
    throw ValidityError(kModule, "radius", "map images reach too far for the Y window");
  }

  auto sched_x = config.schedule.empty()
                     ? make_schedule(config.radius, std::max(1, config.radius / 20))
                     : config.schedule;
  auto sched_y = make_schedule(radius_y, std::max(1, radius_y / 20));
  auto fx = u_point_assigned(wx, sched_x, config.zone).field;
  auto fy = u_point_assigned(wy, sched_y, field_zone_y).field;

  // Map quality over the zone: distortion on X pairs, net radius over the Y zone.
  std::vector<std::vector<std::int32_t>> dx(x_zone);
  std::vector<std::vector<std::int32_t>> dy(x_zone);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t v = 0; v < static_cast<std::int64_t>(x_zone); ++v) {
    const VertexId sx_src[] = {static_cast<VertexId>(v)};
    const VertexId sy_src[] = {image[static_cast<std::size_t>(v)]};
    dx[static_cast<std::size_t>(v)] = kernels::multi_source_bfs_serial(*wx, sx_src);
    dy[static_cast<std::size_t>(v)] = kernels::multi_source_bfs_serial(*wy, sy_src);
  }
  for (VertexId a = 0; a < x_zone; ++a) {
    for (VertexId b = 0; b < x_zone; ++b) {
      rep.map_dis = std::max(rep.map_dis, abs_diff(dx[a][b] * ux, dy[a][image[b]] * uy));
    }
  }
  const auto y_zone = static_cast<VertexId>(wy->ball_size(zone_y));
  for (VertexId w = 0; w < y_zone; ++w) {
    std::int64_t nearest = kInf;
    for (VertexId a = 0; a < x_zone; ++a) nearest = std::min<std::int64_t>(nearest, dy[a][w]);
    rep.map_net = std::max(rep.map_net, nearest * uy);
  }
  rep.map_is_2eps_isometry = rep.map_dis <= 2 * eps && rep.map_net <= 2 * eps;

  for (VertexId v = 0; v < x_zone; ++v) {
    if (!fx.is_stable(v) || !fy.is_stable(image[v])) {
      rep.unstable.push_back(wx->vertex(v));
      continue;
    }
    ++rep.compared;
    const auto a = fx[v] * ux;
    const auto b = fy[image[v]] * uy;
    rep.max_x_minus_y = std::max(rep.max_x_minus_y, a - b);
    rep.max_y_minus_x = std::max(rep.max_y_minus_x, b - a);
  }
  rep.max_abs_deviation = std::max(rep.max_x_minus_y, rep.max_y_minus_x);
  rep.within_8eps = rep.max_abs_deviation <= 8 * eps;
  rep.within_4eps = rep.max_y_minus_x <= 4 * eps;
  return rep;
}

}  // namespace dlscape::gh
