#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dlscape/dlfield.hpp"

namespace dlscape {

/// Discrete co-ray: a vertex path along which the field drops by exactly one
/// per step. truncated is set when the path stopped at the edge of the region
/// where the field is known rather than at a genuine dead end.
struct CoRay {
  std::vector<VertexId> path;
  std::vector<std::int64_t> decrements;
  bool truncated = false;

  std::size_t length() const noexcept { return path.empty() ? 0 : path.size() - 1; }
};

struct CoRayTrace {
  std::vector<CoRay> rays;
  /// Enumeration stopped at max_paths.
  bool path_limit_hit = false;
  /// A stable vertex with no descending neighbour although all of its
  /// neighbours are known: the field is not distance-like there.
  std::vector<VertexId> dead_ends;
};

/// Depth-first enumeration (generator neighbour order) of maximal
/// unit-decrement paths from start through stable zone vertices.
/// Throws ValidityError when start is not a stable zone vertex.
CoRayTrace trace_corays(const ScalarField& field, VertexId start, std::size_t max_paths = 64);

/// Independent re-check of a traced path: consecutive vertices adjacent,
/// field(v_t2) - field(v_t1) = t1 - t2 and d(v_t1, v_t2) = t2 - t1 for all
/// t1 <= t2 (distances by breadth-first search in the window).
bool verify_gradient(const CoRay& coray, const ScalarField& field);

enum class RepresentationVerdict { holds, violated, inconclusive };

struct RepresentationTerm {
  VertexId start;
  std::int64_t busemann_at_x;  // b_gamma(x) at the longest available T
  bool stable;
  std::int64_t bound;          // u(gamma(0)) + b_gamma(x)
};

struct RepresentationReport {
  RepresentationVerdict verdict = RepresentationVerdict::inconclusive;
  std::int64_t value = 0;  // u(x)
  std::vector<RepresentationTerm> terms;
  bool equality_attained = false;
};

/// Checks u(x) <= u(gamma(0)) + b_gamma(x) for each supplied co-ray and
/// equality for at least one. Busemann values come from busemann() along the
/// co-ray with tail window floor(length / 2) unless given; unstable terms make
/// the verdict inconclusive rather than violated.
RepresentationReport representation_check(const ScalarField& field, VertexId x,
                                          std::span<const CoRay> corays,
                                          std::optional<std::int64_t> tail_window = std::nullopt);

/// Number of stable neighbours whose value is exactly field(start) - 1.
int uniqueness_probe(const ScalarField& field, VertexId start);

}  // namespace dlscape
