#include "dlscape/dlfield.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dlscape/error.hpp"
#include "dlscape/kernels.hpp"

namespace dlscape {

namespace {

constexpr const char* kModule = "dlfield";

enum class Trend { none, non_decreasing, non_increasing };

void require_window(const std::shared_ptr<const Window>& window) {
  if (!window) throw DomainError(kModule, "window", "null window");
}

void require_zone(const Window& window, int zone) {
  if (zone < 0 || zone > window.radius()) {
    throw ValidityError(kModule, "zone",
                        "zone " + std::to_string(zone) + " must lie in [0, R = " +
                            std::to_string(window.radius()) + "]; increase --radius");
  }
}

std::string vertex_name(const Window& w, VertexId v) { return "(" + to_string(w.vertex(v)) + ")"; }

// Per-parameter values restricted to the zone; valid[k][v] == 0 means
// parameter k does not belong to vertex v's sequence.
struct Sequences {
  std::vector<std::int64_t> params;
  std::vector<std::vector<std::int64_t>> values;
  std::vector<std::vector<std::uint8_t>> valid;
};

FieldResult aggregate(std::shared_ptr<const Window> window, FieldKind kind, VertexId anchor,
                      int zone, const Sequences& seq, std::int64_t tail, Trend trend) {
  const auto n = window->ball_size(zone);
  FieldResult out;
  auto& f = out.field;
  f.window = std::move(window);
  f.kind = kind;
  f.anchor = anchor;
  f.zone = zone;
  f.values.assign(n, 0);
  f.stable.assign(n, 0);
  f.last_change.assign(n, 0);
  out.report.schedule = seq.params;
  out.report.tail_window = tail;
  out.report.oscillation.assign(n, 0);

  const auto last_param = seq.params.back();
  const auto tail_start = last_param - tail;
  for (std::size_t v = 0; v < n; ++v) {
    bool any = false;
    bool moved_wrong = false;
    std::int64_t prev = 0;
    std::int64_t final_value = 0;
    std::int64_t since = 0;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (std::size_t k = 0; k < seq.params.size(); ++k) {
      if (!seq.valid.empty() && !seq.valid[k][v]) continue;
      const auto value = seq.values[k][v];
      if (any) {
        if ((trend == Trend::non_decreasing && value < prev) ||
            (trend == Trend::non_increasing && value > prev)) {
          moved_wrong = true;
        }
      }
      if (!any || value != prev) since = seq.params[k];
      if (seq.params[k] >= tail_start) {
        lo = std::min(lo, value);
        hi = std::max(hi, value);
      }
      prev = value;
      final_value = value;
      any = true;
    }
    if (!any) {
      f.last_change[v] = last_param;
      continue;
    }
    f.values[v] = final_value;
    f.last_change[v] = since;
    f.stable[v] = since <= tail_start ? 1 : 0;
    out.report.oscillation[v] = hi >= lo ? hi - lo : 0;
    if (moved_wrong) ++out.report.monotonicity_violations;
    if (f.stable[v]) ++out.report.stable_count;
  }
  return out;
}

std::vector<std::int32_t> distances_from(const Window& w, VertexId v, std::int32_t max_depth) {
  const VertexId src[] = {v};
  return kernels::multi_source_bfs_serial(w, src, {.allowed = {}, .max_depth = max_depth});
}

// d(x, S_r(a)) is exact for every x in B_zone(x0) once d(x0, a) + max(r, zone) <= R:
// paths to the sphere from inside B_r(a) never leave it, and from outside they
// follow a geodesic from a, which stays in B_{d(x0,a) + zone}(x0).
void require_sphere_exactness(const Window& w, VertexId a, std::int64_t r, int zone) {
  const std::int64_t need = w.dist_from_base(a) + std::max<std::int64_t>(r, zone);
  if (need > w.radius()) {
    throw ValidityError(kModule, "radius",
                        "field at " + vertex_name(w, a) + " with r = " + std::to_string(r) +
                            " and zone " + std::to_string(zone) + " needs R >= " +
                            std::to_string(need) + " (have " + std::to_string(w.radius()) +
                            "); increase --radius");
  }
}

std::vector<std::int32_t> anchor_distances(const Window& w, VertexId a) {
  if (a == Window::base_id()) return {w.dist_from_base().begin(), w.dist_from_base().end()};
  return distances_from(w, a, kernels::kNoDepthLimit);
}

void require_increasing(std::span<const std::int64_t> params, const std::string& what,
                        const std::string& parameter) {
  if (params.empty()) throw DomainError(kModule, parameter, what + " is empty");
  for (std::size_t i = 1; i < params.size(); ++i) {
    if (params[i] <= params[i - 1]) {
      throw DomainError(kModule, parameter,
                        what + " must be strictly increasing (entry " + std::to_string(i) + ")");
    }
  }
}

std::int64_t default_tail(int zone, std::optional<std::int64_t> tail) {
  auto w = tail.value_or(2 * static_cast<std::int64_t>(zone));
  if (w < 0) throw DomainError(kModule, "tail", "tail window must be non-negative");
  return w;
}

}  // namespace

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::u_r: return "u_r";
    case FieldKind::point_assigned: return "point_assigned";
    case FieldKind::busemann: return "busemann";
    case FieldKind::horo: return "horo";
    case FieldKind::set_limit: return "set_limit";
  }
  return "?";
}

FieldKind parse_field_kind(const std::string& text) {
  for (auto k : {FieldKind::u_r, FieldKind::point_assigned, FieldKind::busemann, FieldKind::horo,
                 FieldKind::set_limit}) {
    if (to_string(k) == text) return k;
  }
  throw DomainError(kModule, "kind", "unknown field kind '" + text + "'");
}

std::vector<std::int64_t> make_schedule(std::int64_t r_max, std::int64_t step) {
  if (step <= 0 || r_max < step) {
    throw DomainError(kModule, "r-max", "schedule needs 0 < step <= r_max");
  }
  std::vector<std::int64_t> out;
  for (auto r = step; r < r_max; r += step) out.push_back(r);
  out.push_back(r_max);
  return out;
}

ScalarField u_r(std::shared_ptr<const Window> window, int r, int zone,
                std::optional<VertexId> anchor) {
  require_window(window);
  const auto& w = *window;
  require_zone(w, zone);
  if (r < 0) throw DomainError(kModule, "r", "r must be non-negative");
  const VertexId a = anchor.value_or(Window::base_id());
  if (a >= w.size()) throw DomainError(kModule, "base", "anchor is not a window vertex");
  require_sphere_exactness(w, a, r, zone);

  auto d_anchor = anchor_distances(w, a);
  std::vector<VertexId> sources;
  for (VertexId v = 0; v < w.size(); ++v) {
    if (d_anchor[v] == r) sources.push_back(v);
  }
  auto d = kernels::multi_source_bfs(w, sources);

  ScalarField f;
  f.window = window;
  f.kind = FieldKind::u_r;
  f.anchor = a;
  f.zone = zone;
  const auto n = w.ball_size(zone);
  f.values.resize(n);
  f.stable.assign(n, 1);
  f.last_change.assign(n, r);
  for (std::size_t v = 0; v < n; ++v) f.values[v] = static_cast<std::int64_t>(d[v]) - r;
  return f;
}

FieldResult u_point_assigned(std::shared_ptr<const Window> window,
                             std::span<const std::int64_t> schedule, int zone,
                             std::optional<std::int64_t> tail_window,
                             std::optional<VertexId> anchor, kernels::Exec exec) {
  require_window(window);
  const auto& w = *window;
  require_zone(w, zone);
  require_increasing(schedule, "r-schedule", "r-max");
  if (schedule.front() < 0) throw DomainError(kModule, "r-max", "radii must be non-negative");
  const auto tail = default_tail(zone, tail_window);
  const VertexId a = anchor.value_or(Window::base_id());
  if (a >= w.size()) throw DomainError(kModule, "base", "anchor is not a window vertex");

  require_sphere_exactness(w, a, schedule.back(), zone);
  auto d_anchor = anchor_distances(w, a);

  const auto n = w.ball_size(zone);
  Sequences seq;
  seq.params.assign(schedule.begin(), schedule.end());
  seq.values.assign(schedule.size(), {});
  seq.valid.assign(schedule.size(), {});

  const auto count = static_cast<std::ptrdiff_t>(schedule.size());
#pragma omp parallel for schedule(dynamic) if (exec == kernels::Exec::parallel)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto r = schedule[static_cast<std::size_t>(k)];
    std::vector<VertexId> sources;
    for (VertexId v = 0; v < w.size(); ++v) {
      if (d_anchor[v] == r) sources.push_back(v);
    }
    auto d = kernels::multi_source_bfs_serial(w, sources);
    auto& values = seq.values[static_cast<std::size_t>(k)];
    auto& valid = seq.valid[static_cast<std::size_t>(k)];
    values.resize(n);
    valid.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      values[v] = static_cast<std::int64_t>(d[v]) - r;
      valid[v] = r >= d_anchor[v] ? 1 : 0;
    }
  }
  return aggregate(window, FieldKind::point_assigned, a, zone, seq, tail, Trend::non_decreasing);
}

FieldResult busemann(std::shared_ptr<const Window> window, std::span<const VertexId> ray,
                     std::int64_t T, int zone, std::optional<std::int64_t> tail_window) {
  require_window(window);
  const auto& w = *window;
  require_zone(w, zone);
  const auto tail = default_tail(zone, tail_window);
  if (T < 0) throw DomainError(kModule, "T", "T must be non-negative");
  if (ray.size() < static_cast<std::size_t>(T) + 1) {
    throw DomainError(kModule, "T", "ray has " + std::to_string(ray.size()) +
                                        " vertices, fewer than T + 1 = " + std::to_string(T + 1));
  }
  for (std::int64_t t = 0; t <= T; ++t) {
    const auto v = ray[static_cast<std::size_t>(t)];
    if (v >= w.size()) throw DomainError(kModule, "ray", "ray vertex is not in the window");
    if (w.dist_from_base(v) + zone > w.radius()) {
      throw ValidityError(kModule, "radius",
                          "ray vertex " + vertex_name(w, v) + " at t = " + std::to_string(t) +
                              " is farther than R - zone from the base; increase --radius");
    }
  }
  if (w.dist_from_base(ray[0]) > zone) {
    throw ValidityError(kModule, "zone", "ray must start inside the zone");
  }
  auto d0 = distances_from(w, ray[0], static_cast<std::int32_t>(T));
  for (std::int64_t t = 0; t <= T; ++t) {
    if (d0[ray[static_cast<std::size_t>(t)]] != t) {
      throw DomainError(kModule, "ray",
                        "path is not geodesic at t = " + std::to_string(t) + " (vertex " +
                            vertex_name(w, ray[static_cast<std::size_t>(t)]) + ")");
    }
  }

  const auto n = w.ball_size(zone);
  Sequences seq;
  for (std::int64_t t = 0; t <= T; ++t) seq.params.push_back(t);
  seq.values.assign(seq.params.size(), {});
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t <= T; ++t) {
    const auto target = ray[static_cast<std::size_t>(t)];
    auto d = distances_from(w, target, zone + w.dist_from_base(target));
    auto& values = seq.values[static_cast<std::size_t>(t)];
    values.resize(n);
    for (std::size_t v = 0; v < n; ++v) values[v] = static_cast<std::int64_t>(d[v]) - t;
  }
  return aggregate(window, FieldKind::busemann, ray[0], zone, seq, tail, Trend::non_increasing);
}

FieldResult horofunction(std::shared_ptr<const Window> window, std::span<const VertexId> points,
                         int zone, std::optional<std::int64_t> tail_window) {
  require_window(window);
  const auto& w = *window;
  require_zone(w, zone);
  const auto tail = default_tail(zone, tail_window);
  if (points.empty()) throw DomainError(kModule, "points", "empty point sequence");
  Sequences seq;
  for (auto p : points) {
    if (p >= w.size()) throw DomainError(kModule, "points", "point is not in the window");
    const auto dp = w.dist_from_base(p);
    if (dp + zone > w.radius()) {
      throw ValidityError(kModule, "radius",
                          "horofunction point " + vertex_name(w, p) +
                              " is farther than R - zone from the base; increase --radius");
    }
    if (!seq.params.empty() && dp <= seq.params.back()) {
      throw DomainError(kModule, "points", "d(x0, p_n) must be strictly increasing (at " +
                                               vertex_name(w, p) + ")");
    }
    seq.params.push_back(dp);
  }
  const auto n = w.ball_size(zone);
  seq.values.assign(points.size(), {});
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto p = points[static_cast<std::size_t>(k)];
    const auto dp = w.dist_from_base(p);
    auto d = distances_from(w, p, zone + dp);
    auto& values = seq.values[static_cast<std::size_t>(k)];
    values.resize(n);
    for (std::size_t v = 0; v < n; ++v) values[v] = static_cast<std::int64_t>(d[v]) - dp;
  }
  return aggregate(window, FieldKind::horo, Window::base_id(), zone, seq, tail, Trend::none);
}

FieldResult dl_from_sets(std::shared_ptr<const Window> window, std::span<const VertexSet> sets,
                         std::span<const std::int64_t> shifts, int zone,
                         std::optional<std::int64_t> tail_window) {
  require_window(window);
  const auto& w = *window;
  require_zone(w, zone);
  const auto tail = default_tail(zone, tail_window);
  if (sets.empty()) throw DomainError(kModule, "sets", "empty set sequence");
  if (sets.size() != shifts.size()) {
    throw DomainError(kModule, "shifts", "need one shift per set");
  }
  Sequences seq;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    if (sets[k].empty()) {
      throw DomainError(kModule, "sets", "H_" + std::to_string(k) + " is empty");
    }
    std::int64_t dmin = std::numeric_limits<std::int64_t>::max();
    for (auto v : sets[k]) {
      if (v >= w.size()) throw DomainError(kModule, "sets", "set vertex is not in the window");
      dmin = std::min<std::int64_t>(dmin, w.dist_from_base(v));
    }
    if (2 * static_cast<std::int64_t>(zone) + dmin > w.radius()) {
      throw ValidityError(kModule, "radius",
                          "d(x0, H_" + std::to_string(k) + ") = " + std::to_string(dmin) +
                              " needs R >= 2 zone + d(x0, H); increase --radius");
    }
    if (!seq.params.empty() && dmin <= seq.params.back()) {
      throw DomainError(kModule, "sets", "d(x0, H_n) must be strictly increasing");
    }
    seq.params.push_back(dmin);
  }
  const auto n = w.ball_size(zone);
  seq.values.assign(sets.size(), {});
  const auto count = static_cast<std::ptrdiff_t>(sets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    auto d = kernels::multi_source_bfs_serial(w, sets[idx].ids());
    auto& values = seq.values[idx];
    values.resize(n);
    for (std::size_t v = 0; v < n; ++v) values[v] = static_cast<std::int64_t>(d[v]) - shifts[idx];
  }
  return aggregate(window, FieldKind::set_limit, Window::base_id(), zone, seq, tail, Trend::none);
}

GromovReport gromov_check(const ScalarField& field, std::span<const std::int64_t> t_samples) {
  GromovReport report;
  const auto& w = *field.window;
  const auto n = field.size();
  std::vector<std::uint8_t> known(w.size(), 0);
  for (std::size_t v = 0; v < n; ++v) known[v] = field.stable[v];

  // Escape distance: 1 + distance inside the known region to a known vertex
  // with an unknown neighbour (or one on the window rim).
  std::vector<VertexId> rim;
  for (VertexId v = 0; v < n; ++v) {
    if (!known[v]) continue;
    bool edge = w.dist_from_base(v) == w.radius();
    for (auto nb : w.neighbors(v)) edge = edge || !known[nb];
    if (edge) rim.push_back(v);
  }
  auto to_rim = kernels::multi_source_bfs_serial(w, rim, {.allowed = known});

  for (auto t : t_samples) {
    std::vector<VertexId> sub;
    for (VertexId v = 0; v < n; ++v) {
      if (known[v] && field.values[v] <= t) sub.push_back(v);
    }
    if (sub.empty()) {
      report.skipped_t.push_back(t);
      continue;
    }
    auto d = kernels::multi_source_bfs_serial(w, sub, {.allowed = known});
    for (VertexId v = 0; v < n; ++v) {
      if (!known[v] || field.values[v] < t) continue;
      ++report.checked;
      const auto need = field.values[v] - t;
      if (d[v] == need) {
        ++report.verified;
        continue;
      }
      const bool shorter = d[v] != kernels::kUnreached && d[v] < need;
      const bool confined =
          to_rim[v] == kernels::kUnreached || need < static_cast<std::int64_t>(to_rim[v]) + 1;
      if (shorter || confined) {
        report.violations.push_back({v, t, field.values[v], d[v]});
      } else {
        ++report.inconclusive;
      }
    }
  }
  return report;
}

VertexSet level_set(const ScalarField& field, std::int64_t c) {
  std::vector<VertexId> ids;
  for (VertexId v = 0; v < field.size(); ++v) {
    if (field.values[v] == c) ids.push_back(v);
  }
  return VertexSet(std::move(ids));
}

StabilityReport stability_check(std::span<const ScalarField> fields, const ScalarField& limit,
                                std::span<const std::int64_t> t_samples) {
  StabilityReport report;
  const auto n = limit.size();
  for (const auto& f : fields) {
    if (f.window != limit.window || f.size() != n) {
      throw DomainError(kModule, "fields", "stability_check needs fields on one window and zone");
    }
  }
  report.settled_at.assign(n, fields.size());
  for (VertexId v = 0; v < n; ++v) {
    std::size_t settled = fields.size();
    while (settled > 0 && fields[settled - 1].values[v] == limit.values[v]) --settled;
    report.settled_at[v] = settled;
    if (!fields.empty() && settled == fields.size()) {
      report.convergent = false;
      report.non_convergent.push_back(v);
    }
  }
  report.limit_check = gromov_check(limit, t_samples);
  return report;
}

std::optional<std::pair<VertexId, VertexId>> lipschitz_violation(const ScalarField& field) {
  const auto& w = *field.window;
  for (VertexId v = 0; v < field.size(); ++v) {
    for (auto nb : w.neighbors(v)) {
      if (nb <= v || !field.in_zone(nb)) continue;
      auto diff = field.values[v] - field.values[nb];
      if (diff > 1 || diff < -1) return std::make_pair(v, nb);
    }
  }
  return std::nullopt;
}

}  // namespace dlscape
