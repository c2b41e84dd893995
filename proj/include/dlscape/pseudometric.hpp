#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dlscape/dlfield.hpp"

namespace dlscape {

/// 2 * rho over a sample, kept as integers. Entry (i, j) is stable when both
/// u_{x_i}(x_j) and u_{x_j}(x_i) are stable.
struct RhoMatrix {
  std::vector<VertexId> sample;
  std::vector<std::int64_t> twice_rho;
  std::vector<std::uint8_t> stable;
  Rational scale{1};

  std::size_t n() const noexcept { return sample.size(); }
  std::int64_t at(std::size_t i, std::size_t j) const { return twice_rho[i * n() + j]; }
  bool is_stable(std::size_t i, std::size_t j) const { return stable[i * n() + j] != 0; }
};

/// Point-assigned fields for every sample point as base, computed on one
/// window with a shared zone (in parallel across sample points).
std::vector<ScalarField> point_assigned_fields(std::shared_ptr<const Window> window,
                                               std::span<const VertexId> sample,
                                               std::span<const std::int64_t> schedule, int zone,
                                               std::optional<std::int64_t> tail_window = std::nullopt,
                                               kernels::Exec exec = kernels::Exec::parallel);

/// rho from fields whose anchors are the sample points.
RhoMatrix rho_matrix(std::span<const ScalarField> fields);

RhoMatrix rho_matrix(std::shared_ptr<const Window> window, std::span<const VertexId> sample,
                     std::span<const std::int64_t> schedule, int zone,
                     std::optional<std::int64_t> tail_window = std::nullopt);

struct AxiomReport {
  std::size_t triples_checked = 0;
  std::vector<std::string> violations;

  bool passed() const noexcept { return violations.empty(); }
};

/// Symmetry, rho(x,x) = 0, non-negativity, rho <= d and the triangle
/// inequality over all stable entries/triples. d is the sample distance matrix.
AxiomReport check_pseudometric_axioms(const RhoMatrix& rho, std::span<const std::int64_t> d);

/// u_x(y) + u_y(z) <= u_x(z) with ux, uy anchored at x and y. False when any
/// needed value is unstable or out of zone.
bool anti_triangle_check(const ScalarField& ux, const ScalarField& uy, VertexId y, VertexId z);

struct BaseLipschitzResult {
  bool holds = false;
  std::int64_t sup_difference = 0;
  std::int64_t base_distance = 0;
  std::size_t compared = 0;
};

/// sup over the shared stable zone of |u_{x0} - u_{x1}| <= d(x0, x1).
BaseLipschitzResult base_lipschitz_check(const ScalarField& field_a, const ScalarField& field_b);

struct ClassBlock {
  std::vector<VertexId> members;
  /// offsets[i]: u_{members[0]} - u_{members[i]} on the zone.
  std::vector<std::int64_t> offsets;
};

/// Partition of the sample into classes on window evidence: two points share a
/// block when their fields differ by one constant on every vertex where both
/// are stable. Throws std::logic_error if this grouping disagrees with
/// {rho = 0}.
struct ClassPartition {
  std::vector<ClassBlock> blocks;
  std::string evidence = "WINDOW-EVIDENCE";
};

ClassPartition equivalence_classes(std::span<const ScalarField> fields);

}  // namespace dlscape
