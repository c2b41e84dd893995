#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlscape/kernels.hpp"
#include "dlscape/window.hpp"

namespace dlscape {

enum class FieldKind { u_r, point_assigned, busemann, horo, set_limit };

std::string to_string(FieldKind kind);
FieldKind parse_field_kind(const std::string& text);

/// Integer hop values of a candidate distance-like function on the zone
/// B_zone(x0) of a window (the id prefix [0, ball_size(zone))).
///
/// anchor is the point the function is tied to: the base point of u_{x0},
/// the start of the ray for a Busemann function, the window base otherwise.
/// last_change[v] is the sequence parameter (r, T, or d(x0, p_n)) from which
/// the value stayed at its final value; stable[v] says whether that happened
/// at least tail_window before the last parameter.
struct ScalarField {
  std::shared_ptr<const Window> window;
  FieldKind kind = FieldKind::u_r;
  VertexId anchor = 0;
  int zone = 0;
  std::vector<std::int64_t> values;
  std::vector<std::uint8_t> stable;
  std::vector<std::int64_t> last_change;

  std::size_t size() const noexcept { return values.size(); }
  bool in_zone(VertexId v) const noexcept { return v < values.size(); }
  bool is_stable(VertexId v) const noexcept { return in_zone(v) && stable[v] != 0; }
  std::int64_t operator[](VertexId v) const { return values[v]; }
};

struct ConvergenceReport {
  std::vector<std::int64_t> schedule;
  std::int64_t tail_window = 0;
  /// max - min of each vertex's values over the tail of the schedule.
  std::vector<std::int64_t> oscillation;
  std::size_t stable_count = 0;
  /// Vertices whose sequence moved against the expected monotone direction
  /// (point-assigned: must not decrease; Busemann: must not increase).
  std::size_t monotonicity_violations = 0;
};

struct FieldResult {
  ScalarField field;
  ConvergenceReport report;
};

/// u^r(x) = d(x, S_r(anchor)) - r on B_zone(x0). Exact when
/// d(x0, anchor) + max(r, zone) <= R; otherwise throws ValidityError.
ScalarField u_r(std::shared_ptr<const Window> window, int r, int zone,
                std::optional<VertexId> anchor = std::nullopt);

/// Point-assigned field from an increasing r-schedule. Only entries with
/// r >= d(anchor, x) enter vertex x's sequence (the range where u^r(x) is
/// non-decreasing); the value is the last of them. tail_window defaults to
/// 2 * zone and is measured in units of r.
FieldResult u_point_assigned(std::shared_ptr<const Window> window,
                             std::span<const std::int64_t> schedule, int zone,
                             std::optional<std::int64_t> tail_window = std::nullopt,
                             std::optional<VertexId> anchor = std::nullopt,
                             kernels::Exec exec = kernels::Exec::parallel);

/// Evenly spaced schedule {step, 2 step, ..., r_max}.
std::vector<std::int64_t> make_schedule(std::int64_t r_max, std::int64_t step);

/// Busemann approximants d(x, ray[t]) - t for t = 0..T. The ray must be a
/// geodesic vertex path starting anywhere in the zone with
/// d(x0, ray[T]) + zone <= R.
FieldResult busemann(std::shared_ptr<const Window> window, std::span<const VertexId> ray,
                     std::int64_t T, int zone,
                     std::optional<std::int64_t> tail_window = std::nullopt);

/// Horofunction approximants d(x, p_n) - d(x0, p_n) for a diverging point
/// sequence (d(x0, p_n) strictly increasing, last one <= R - zone).
FieldResult horofunction(std::shared_ptr<const Window> window, std::span<const VertexId> points,
                         int zone, std::optional<std::int64_t> tail_window = std::nullopt);

/// General limit d(x, H_n) - c_n. d(x0, H_n) must be strictly increasing and
/// 2 * zone + d(x0, H_n) <= R for every n.
FieldResult dl_from_sets(std::shared_ptr<const Window> window, std::span<const VertexSet> sets,
                         std::span<const std::int64_t> shifts, int zone,
                         std::optional<std::int64_t> tail_window = std::nullopt);

struct GromovViolation {
  VertexId vertex;
  std::int64_t t;
  std::int64_t value;
  std::int64_t distance;  // in-zone distance to the sublevel set, -1 if none
};

struct GromovReport {
  std::size_t checked = 0;
  std::size_t verified = 0;
  std::size_t inconclusive = 0;
  std::vector<std::int64_t> skipped_t;  // empty sublevel set
  std::vector<GromovViolation> violations;

  bool passed() const noexcept { return violations.empty(); }
};

/// Discrete form of Gromov's characterization: for every stable x and sampled
/// t with u(x) >= t, u(x) = t + d(x, {u <= t}). Only stable vertices take part.
/// A mismatch is a violation when a path of length u(x) - t could not have
/// left the stable region; otherwise the vertex is counted as inconclusive.
GromovReport gromov_check(const ScalarField& field, std::span<const std::int64_t> t_samples);

/// In-zone vertices whose value is exactly c.
VertexSet level_set(const ScalarField& field, std::int64_t c);

struct StabilityReport {
  bool convergent = true;
  std::vector<VertexId> non_convergent;  // last field disagrees with the limit
  /// Per vertex, index of the first field from which the sequence equals the limit.
  std::vector<std::size_t> settled_at;
  GromovReport limit_check;

  bool passed() const noexcept { return convergent && limit_check.passed(); }
};

/// Checks that the fields converge pointwise on the zone to limit and that the
/// limit is again distance-like (gromov_check over t_samples).
StabilityReport stability_check(std::span<const ScalarField> fields, const ScalarField& limit,
                                std::span<const std::int64_t> t_samples);

/// Exhaustive 1-Lipschitz check across every in-zone edge. Returns the first
/// offending edge, if any.
std::optional<std::pair<VertexId, VertexId>> lipschitz_violation(const ScalarField& field);

}  // namespace dlscape
