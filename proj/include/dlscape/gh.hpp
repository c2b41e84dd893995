#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlscape/dlfield.hpp"
#include "dlscape/rational.hpp"

namespace dlscape::gh {

/// Pointed finite metric space. Distances are scaled integers: the real
/// distance is dist / scale.
struct FiniteMetricSpace {
  std::size_t n = 0;
  std::vector<std::int64_t> dist;
  std::size_t base = 0;
  Rational scale{1};

  std::int64_t at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
};

/// Validates symmetry, zero diagonal, positive off-diagonal and the triangle
/// inequality; throws DomainError naming a witness pair or triple.
void validate(const FiniteMetricSpace& space);

FiniteMetricSpace make_space(std::vector<std::vector<std::int64_t>> dist, std::size_t base,
                             Rational scale = Rational(1));

/// Sample of a window as a pointed space (base = first sample point).
FiniteMetricSpace from_window(const Window& window, std::span<const VertexId> sample);

/// Re-expresses both spaces over the common scale lcm(num_X, num_Y).
std::pair<FiniteMetricSpace, FiniteMetricSpace> to_common_scale(const FiniteMetricSpace& x,
                                                                const FiniteMetricSpace& y);

using Pair = std::pair<std::size_t, std::size_t>;

struct Correspondence {
  std::vector<Pair> pairs;
  std::int64_t distortion = 0;
  /// False when the search budget ran out before optimality was proved.
  bool lower_bound_proved = true;
};

bool is_pointed_correspondence(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               std::span<const Pair> pairs);

std::int64_t distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        std::span<const Pair> pairs);

struct SearchOptions {
  std::size_t max_points = 8;
  std::uint64_t node_budget = 50'000'000;
};

/// Globally minimal pointed correspondence. Searches unions graph(f) u graph(g)
/// with f(base_X) = base_Y and g(base_Y) = base_X by branch and bound; any
/// pointed correspondence contains such a union and distortion only grows
/// with inclusion. Spaces must share a scale.
Correspondence min_distortion_correspondence(const FiniteMetricSpace& x,
                                             const FiniteMetricSpace& y,
                                             const SearchOptions& options = {});

struct GhBounds {
  Rational lower;  // D* / 2, in units of the common scale
  Rational upper;  // D*
  bool exact = true;
  Correspondence witness;
};

GhBounds gh_bounds(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                   const SearchOptions& options = {});

struct EpsIsometry {
  std::vector<std::size_t> map;
  std::int64_t dis = 0;
  std::int64_t net_eps = 0;
};

std::int64_t map_distortion(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                            std::span<const std::size_t> map);
/// Smallest eps such that the image of map is an eps-net of y.
std::int64_t net_radius(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                        std::span<const std::size_t> map);

/// f(x) = smallest-index correspondent, f(base_X) = base_Y.
EpsIsometry build_eps_isometry(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                               const Correspondence& corr);

/// {(x, y) : d_Y(f(x), y) <= eps}. Throws DomainError if f is not an
/// eps-isometry.
Correspondence corr_from_isometry(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                  const EpsIsometry& f, std::int64_t eps);

struct EpsDeltaVerdict {
  bool certified = false;
  std::string reason;
  std::optional<Pair> witness;
  Rational bound;  // 2 eps + delta when certified
};

/// Checks that the aligned nets (netX[0] = base_X, netY[0] = base_Y) are eps-nets
/// and |d_X(x_i, x_j) - d_Y(y_i, y_j)| < delta; then d_GH < 2 eps + delta.
EpsDeltaVerdict eps_delta_certificate(const FiniteMetricSpace& x, const FiniteMetricSpace& y,
                                      std::span<const std::size_t> net_x,
                                      std::span<const std::size_t> net_y, std::int64_t eps,
                                      std::int64_t delta);

/// Vertex map used by the point-assigned GH experiment.
struct VertexMap {
  enum class Kind { identity, spine, scale } kind = Kind::identity;
  std::int64_t factor = 1;

  Vertex apply(const Vertex& v) const;
  std::string to_string() const;
};

VertexMap parse_vertex_map(const std::string& text);

struct PaGhConfig {
  GraphSpace space_x;
  GraphSpace space_y;
  Rational eps{1};
  int radius = 60;
  int zone = 15;
  std::vector<std::int64_t> schedule;  // X schedule; empty: make_schedule(radius, radius / 20)
  VertexMap map;
};

struct PaGhReport {
  std::int64_t common_scale = 1;  // all "units" below are 1 / common_scale
  std::int64_t max_abs_deviation = 0;
  std::int64_t max_x_minus_y = 0;  // u_x0(x) - u_y0(f(x))
  std::int64_t max_y_minus_x = 0;  // u_y0(f(x)) - u_x0(x)
  std::int64_t map_dis = 0;
  std::int64_t map_net = 0;
  bool map_is_2eps_isometry = false;
  bool within_8eps = false;
  bool within_4eps = false;
  std::size_t compared = 0;
  std::vector<Vertex> unstable;
  bool conclusive() const noexcept { return unstable.empty() && compared > 0; }
};

/// Computes point-assigned fields on both windows, pushes the X zone through
/// the map and compares u_{x0}(x) with u_{y0}(f(x)) against 8 eps and the
/// one-sided u_{y0}(f(x)) - u_{x0}(x) against 4 eps, exactly.
PaGhReport pa_gh_experiment(const PaGhConfig& config);

}  // namespace dlscape::gh
