#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dlscape/io.hpp"

// Randomized and exhaustive invariant suites run by `dlscape check`.
namespace dlscape::checks {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Window radius and zone that keep each generator at desk scale.
struct DeskConfig {
  int radius;
  int zone;
};

DeskConfig desk_config(const GeneratorSpec& spec);

struct SuiteOptions {
  GraphSpace space;
  std::optional<int> radius;
  std::optional<int> zone;
  std::optional<std::size_t> trials;  // per-suite default when unset
  std::uint64_t seed = kDefaultSeed;
};

struct SuiteResult {
  std::string suite;
  std::size_t trials = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  io::json witnesses = io::json::array();  // first few violations
  io::json summary = io::json::object();

  bool passed() const noexcept { return violations == 0; }
  io::json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

/// Geodesic ray of length T from the window base, choosing uniformly among
/// the neighbours one step farther out. Throws ValidityError when no such
/// ray is found after repeated attempts.
std::vector<VertexId> random_geodesic_ray(const Window& window, std::int64_t T,
                                          std::mt19937_64& rng);

/// Five integer levels spread over the range of the field's stable values.
std::vector<std::int64_t> t_samples(const ScalarField& field, std::size_t count = 5);

}  // namespace dlscape::checks
