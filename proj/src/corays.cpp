#include "dlscape/corays.hpp"

#include <string>

#include "dlscape/error.hpp"
#include "dlscape/kernels.hpp"

namespace dlscape {

namespace {

bool at_known_edge(const ScalarField& field, VertexId v) {
  const auto& w = *field.window;
  if (w.dist_from_base(v) == w.radius()) return true;
  for (auto nb : w.neighbors(v)) {
    if (!field.is_stable(nb)) return true;
  }
  return false;
}

struct Tracer {
  const ScalarField& field;
  std::size_t max_paths;
  CoRayTrace& out;
  std::vector<VertexId> path;

  // Returns false once the path budget is exhausted.
  bool extend(VertexId v) {
    path.push_back(v);
    bool descended = false;
    for (auto nb : field.window->neighbors(v)) {
      if (!field.is_stable(nb) || field[nb] != field[v] - 1) continue;
      descended = true;
      if (!extend(nb)) return false;
    }
    if (!descended) {
      if (out.rays.size() == max_paths) {
        out.path_limit_hit = true;
        return false;
      }
      CoRay ray;
      ray.path = path;
      for (std::size_t i = 1; i < path.size(); ++i) {
        ray.decrements.push_back(field[path[i - 1]] - field[path[i]]);
      }
      ray.truncated = at_known_edge(field, v);
      if (!ray.truncated) out.dead_ends.push_back(v);
      out.rays.push_back(std::move(ray));
    }
    path.pop_back();
    return true;
  }
};

}  // namespace

CoRayTrace trace_corays(const ScalarField& field, VertexId start, std::size_t max_paths) {
  if (!field.is_stable(start)) {
    throw ValidityError("corays", "zone",
                        "co-ray start must be a stable vertex inside the field zone; increase "
                        "--zone or the r-schedule");
  }
  if (max_paths == 0) throw DomainError("corays", "max", "max_paths must be positive");
  CoRayTrace out;
  Tracer tracer{field, max_paths, out, {}};
  tracer.extend(start);
  return out;
}

bool verify_gradient(const CoRay& coray, const ScalarField& field) {
  const auto& path = coray.path;
  if (path.empty()) return false;
  const auto& w = *field.window;
  for (auto v : path) {
    if (!field.in_zone(v)) return false;
  }
  for (std::size_t i = 1; i < path.size(); ++i) {
    bool adjacent = false;
    for (auto nb : w.neighbors(path[i - 1])) adjacent = adjacent || nb == path[i];
    if (!adjacent) return false;
  }
  const auto len = static_cast<std::int64_t>(path.size()) - 1;
  for (std::int64_t t1 = 0; t1 <= len; ++t1) {
    const VertexId src[] = {path[static_cast<std::size_t>(t1)]};
    auto d = kernels::multi_source_bfs_serial(
        w, src, {.allowed = {}, .max_depth = static_cast<std::int32_t>(len - t1)});
    for (std::int64_t t2 = t1; t2 <= len; ++t2) {
      const auto v2 = path[static_cast<std::size_t>(t2)];
      if (field[v2] - field[src[0]] != t1 - t2) return false;
      if (d[v2] != t2 - t1) return false;
    }
  }
  return true;
}

RepresentationReport representation_check(const ScalarField& field, VertexId x,
                                          std::span<const CoRay> corays,
                                          std::optional<std::int64_t> tail_window) {
  if (!field.is_stable(x)) {
    throw ValidityError("corays", "zone", "representation_check needs a stable vertex x");
  }
  RepresentationReport report;
  report.value = field[x];
  bool violated = false;
  bool all_stable = true;
  for (const auto& ray : corays) {
    if (ray.path.empty()) continue;
    const auto T = static_cast<std::int64_t>(ray.length());
    auto b = busemann(field.window, ray.path, T, field.zone, tail_window.value_or(T / 2));
    RepresentationTerm term{ray.path.front(), b.field[x], b.field.is_stable(x) != 0,
                            field[ray.path.front()] + b.field[x]};
    if (term.stable) {
      violated = violated || report.value > term.bound;
      report.equality_attained = report.equality_attained || report.value == term.bound;
    } else {
      all_stable = false;
    }
    report.terms.push_back(term);
  }
  if (violated) {
    report.verdict = RepresentationVerdict::violated;
  } else if (all_stable && report.equality_attained) {
    report.verdict = RepresentationVerdict::holds;
  } else {
    report.verdict = RepresentationVerdict::inconclusive;
  }
  return report;
}

int uniqueness_probe(const ScalarField& field, VertexId start) {
  int count = 0;
  for (auto nb : field.window->neighbors(start)) {
    if (field.is_stable(nb) && field[nb] == field[start] - 1) ++count;
  }
  return count;
}

}  // namespace dlscape
