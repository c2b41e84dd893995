#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlscape/space.hpp"

// Catalog of generated spaces with analytically known answers.
//
// Coordinates per generator:
//   line, halfline   (x, 0)
//   grid2d           (x, y)
//   tree(b)          (depth, index), index in [0, b^depth)
//   h_graph          (x, y), y >= 0; every integer point of the upper half
//                    plane lies on the x-axis or on exactly one segment of the
//                    nested staples L1_i, L2_i, L3_i
//   pendant_line     (x, 0) spine, (x, 1) leaf
//   cylinder(m)      (level, angle), level >= 0, angle mod m
//   stick(m, h)      (0, 0) apex; (l, j) for l >= 1: spoke interior when
//                    l <= h, cylinder ring l - h - 1 otherwise
namespace dlscape::zoo {

struct ParamInfo {
  std::string name;
  std::int64_t min_value;
  std::int64_t default_value;
};

struct GeneratorInfo {
  std::string name;
  std::string description;
  std::vector<ParamInfo> params;
  std::vector<std::string> oracles;
};

const std::vector<GeneratorInfo>& catalog();

/// Fills in default parameters and validates ranges (b >= 1, m >= 3, h >= 0).
GeneratorSpec normalize(const GeneratorSpec& spec);

/// Builds the space. Throws DomainError for unknown names or bad parameters.
GraphSpace build(const GeneratorSpec& spec, Rational scale = Rational(1));

enum class Quantity { point_assigned, rho, sphere };

Quantity parse_quantity(const std::string& text);
std::string to_string(Quantity q);

/// Closed-form expected value with an absolute tolerance in hops.
struct Expectation {
  std::string label;
  Vertex at;
  Vertex other;  // second argument: base for point_assigned, y for rho
  std::int64_t value = 0;
  std::int64_t tolerance = 0;
};

/// Expected u_base(x), when known in closed form for the generator.
std::optional<Expectation> expected_point_assigned(const GeneratorSpec& spec, const Vertex& base,
                                                   const Vertex& x);

/// Expected 2 * rho(x, y), when known in closed form.
std::optional<Expectation> expected_twice_rho(const GeneratorSpec& spec, const Vertex& x,
                                              const Vertex& y);

/// Landmark expectations for acceptance checks:
///   point_assigned  h_graph p_k, x_k, q_k (k <= extent) from the origin;
///                   other generators: default base against a few vertices
///   rho             a handful of pairs within extent
///   sphere          h_graph listed points of S_n for n = extent (n % 6 == 0),
///                   value = n
/// Throws DomainError when the quantity is unsupported for the generator.
std::vector<Expectation> oracle(const GeneratorSpec& spec, Quantity quantity, std::int64_t extent);

/// Hop distance from the stick apex, d(N, v).
std::int64_t stick_apex_distance(const GeneratorSpec& spec, const Vertex& v);

}  // namespace dlscape::zoo
