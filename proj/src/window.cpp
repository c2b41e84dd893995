#include "dlscape/window.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "dlscape/error.hpp"
#include "dlscape/kernels.hpp"

namespace dlscape {

VertexSet::VertexSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(VertexId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

std::size_t max_window_vertices() {
  constexpr std::size_t kDefault = 2'000'000;
  const char* env = std::getenv("DLSCAPE_MAX_VERTICES");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  auto value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0) {
    throw DomainError("cli", "DLSCAPE_MAX_VERTICES",
                      std::string("DLSCAPE_MAX_VERTICES must be a positive integer, got '") + env +
                          "'");
  }
  return static_cast<std::size_t>(value);
}

std::optional<VertexId> Window::find(const Vertex& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId Window::id_of(const Vertex& v) const {
  auto id = find(v);
  if (!id) {
    throw ValidityError("core-metric", "radius",
                        "vertex (" + to_string(v) + ") is not in the window of radius " +
                            std::to_string(radius_) + "; increase --radius");
  }
  return *id;
}

std::size_t Window::ball_size(int rho) const {
  if (rho < 0) return 0;
  if (rho >= radius_) return vertices_.size();
  return level_end_[static_cast<std::size_t>(rho)];
}

std::vector<std::pair<VertexId, VertexId>> Window::edges() const {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(targets_.size() / 2);
  for (VertexId v = 0; v < vertices_.size(); ++v) {
    for (auto w : neighbors(v)) {
      if (v < w) out.emplace_back(v, w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const Window> materialize_window(const GraphSpace& space, const Vertex& base,
                                                 int radius, std::size_t max_vertices) {
  const auto& gen = space.generator();
  if (radius < 0) throw DomainError("core-metric", "radius", "radius must be non-negative");
  if (!gen.contains(base)) {
    throw DomainError("core-metric", "base",
                      "base (" + to_string(base) + ") is not a vertex of " + space.spec().to_string());
  }

  std::shared_ptr<Window> w(new Window(space));
  w->radius_ = radius;
  w->index_.reserve(1024);
  w->vertices_.push_back(base);
  w->dist_.push_back(0);
  w->index_.emplace(base, 0);

  std::vector<Vertex> nbrs;
  std::size_t head = 0;
  while (head < w->vertices_.size()) {
    const auto v = w->vertices_[head];
    const auto dv = w->dist_[head];
    ++head;
    if (dv == radius) continue;
    nbrs.clear();
    gen.neighbors(v, nbrs);
    for (const auto& n : nbrs) {
      if (w->index_.contains(n)) continue;
      if (w->vertices_.size() >= max_vertices) {
        throw ResourceError("core-metric", "radius",
                            "window of radius " + std::to_string(radius) + " exceeds the budget of " +
                                std::to_string(max_vertices) +
                                " vertices; lower --radius or raise DLSCAPE_MAX_VERTICES");
      }
      w->index_.emplace(n, static_cast<VertexId>(w->vertices_.size()));
      w->vertices_.push_back(n);
      w->dist_.push_back(dv + 1);
    }
  }

  const auto n = w->vertices_.size();
  w->offsets_.assign(n + 1, 0);
  w->targets_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    nbrs.clear();
    gen.neighbors(w->vertices_[i], nbrs);
    for (const auto& nb : nbrs) {
      auto it = w->index_.find(nb);
      if (it != w->index_.end()) w->targets_.push_back(it->second);
    }
    w->offsets_[i + 1] = w->targets_.size();
  }

  w->level_end_.assign(static_cast<std::size_t>(radius) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    w->level_end_[static_cast<std::size_t>(w->dist_[i])] = i + 1;
  }
  for (int r = 1; r <= radius; ++r) {
    auto& cur = w->level_end_[static_cast<std::size_t>(r)];
    cur = std::max(cur, w->level_end_[static_cast<std::size_t>(r - 1)]);
  }
  return w;
}

std::vector<std::int32_t> dist_field(const Window& window, const VertexSet& sources) {
  if (sources.empty()) {
    throw DomainError("core-metric", "sources", "dist_field needs a non-empty source set");
  }
  for (auto s : sources) {
    if (s >= window.size()) {
      throw DomainError("core-metric", "sources", "source id " + std::to_string(s) + " is not in the window");
    }
  }
  return kernels::multi_source_bfs(window, sources.ids());
}

VertexSet sphere(const Window& window, int r) {
  if (r < 0 || r > window.radius()) {
    throw ValidityError("core-metric", "radius",
                        "sphere radius " + std::to_string(r) + " is outside the window radius " +
                            std::to_string(window.radius()) + "; increase --radius");
  }
  std::vector<VertexId> ids;
  auto lo = window.ball_size(r - 1);
  auto hi = window.ball_size(r);
  ids.reserve(hi - lo);
  for (auto v = lo; v < hi; ++v) ids.push_back(static_cast<VertexId>(v));
  return VertexSet(std::move(ids));
}

std::vector<std::int64_t> pairwise_dist(const Window& window, std::span<const VertexId> sample) {
  const int zone = window.radius() / 3;
  for (auto v : sample) {
    if (v >= window.size() || window.dist_from_base(v) > zone) {
      throw ValidityError("core-metric", "radius",
                          "sample vertex (" +
                              (v < window.size() ? to_string(window.vertex(v)) : std::to_string(v)) +
                              ") lies outside the exactness zone floor(R/3) = " +
                              std::to_string(zone) + "; increase --radius");
    }
  }
  const auto n = sample.size();
  std::vector<std::int64_t> out(n * n, 0);
  // Both endpoints lie in B_{R/3}, so every shortest path stays in B_{2R/3}.
  const kernels::BfsOptions opts{.allowed = {}, .max_depth = 2 * zone};
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const VertexId src[] = {sample[static_cast<std::size_t>(i)]};
    auto d = kernels::multi_source_bfs_serial(window, src, opts);
    for (std::size_t j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = d[sample[j]];
  }
  return out;
}

}  // namespace dlscape
