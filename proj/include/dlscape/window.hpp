#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dlscape/space.hpp"

namespace dlscape {

using VertexId = std::uint32_t;

/// Sorted, duplicate-free list of window vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<VertexId> ids);

  std::span<const VertexId> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(VertexId v) const;
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> ids_;
};

/// Vertex budget for a single window, read from DLSCAPE_MAX_VERTICES
/// (default 2,000,000).
std::size_t max_window_vertices();

/// Finite materialization of the ball B_R(x0) of an infinite graph space.
///
/// Vertices are stored in breadth-first order from the base, so the ball
/// B_rho(x0) is always the id prefix [0, ball_size(rho)) and the sphere
/// S_r(x0) is the contiguous id range [ball_size(r-1), ball_size(r)).
/// The adjacency is the induced subgraph on the ball. Immutable once built.
class Window {
 public:
  const GraphSpace& space() const noexcept { return space_; }
  Vertex base() const noexcept { return vertices_.front(); }
  static constexpr VertexId base_id() noexcept { return 0; }
  int radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  const Vertex& vertex(VertexId v) const { return vertices_[v]; }
  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const std::int32_t> dist_from_base() const noexcept { return dist_; }
  std::int32_t dist_from_base(VertexId v) const { return dist_[v]; }

  std::optional<VertexId> find(const Vertex& v) const;
  /// Like find(), but throws ValidityError naming the vertex when absent.
  VertexId id_of(const Vertex& v) const;

  /// Number of vertices with dist_from_base <= rho (rho clamped to [.., R]).
  std::size_t ball_size(int rho) const;

  /// Undirected edge list (i < j), sorted.
  std::vector<std::pair<VertexId, VertexId>> edges() const;

 private:
  friend std::shared_ptr<const Window> materialize_window(const GraphSpace&, const Vertex&, int,
                                                          std::size_t);
  explicit Window(GraphSpace space) : space_(std::move(space)) {}

  GraphSpace space_;
  int radius_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<std::int32_t> dist_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> targets_;
  std::vector<std::size_t> level_end_;
  std::unordered_map<Vertex, VertexId, VertexHash> index_;
};

/// Breadth-first materialization of B_R(base). Throws DomainError for an
/// invalid base or negative radius and ResourceError when the ball exceeds
/// max_vertices.
std::shared_ptr<const Window> materialize_window(const GraphSpace& space, const Vertex& base,
                                                 int radius,
                                                 std::size_t max_vertices = max_window_vertices());

/// Minimum hop distance from every window vertex to the source set, computed
/// inside the window. -1 marks unreachable vertices.
std::vector<std::int32_t> dist_field(const Window& window, const VertexSet& sources);

/// S_r(x0) as a vertex set. Throws ValidityError when r > R.
VertexSet sphere(const Window& window, int r);

/// Symmetric matrix (row-major, in the given sample order) of true hop
/// distances. Every sample point must lie within floor(R/3) of the base.
std::vector<std::int64_t> pairwise_dist(const Window& window, std::span<const VertexId> sample);

}  // namespace dlscape
