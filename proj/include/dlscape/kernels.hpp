#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dlscape/window.hpp"

// Breadth-first search kernels over a window's CSR adjacency.
//
// The serial kernel is the reference implementation. The parallel kernel is
// level-synchronous: each frontier is split across OpenMP threads and vertices
// are claimed with an atomic compare-exchange, so the resulting distances are
// identical to the serial ones even though discovery order is not.
namespace dlscape::kernels {

inline constexpr std::int32_t kUnreached = -1;

/// Whether batched work (one BFS per schedule entry, per sample point, ...)
/// may be spread over OpenMP threads. serial is the reference path.
enum class Exec { serial, parallel };
inline constexpr std::int32_t kNoDepthLimit = std::numeric_limits<std::int32_t>::max();

struct BfsOptions {
  /// When non-empty, only vertices with allowed[v] != 0 are entered (sources
  /// included).
  std::span<const std::uint8_t> allowed = {};
  /// Vertices farther than this are left at kUnreached.
  std::int32_t max_depth = kNoDepthLimit;
};

std::vector<std::int32_t> multi_source_bfs_serial(const Window& window,
                                                  std::span<const VertexId> sources,
                                                  const BfsOptions& options = {});

std::vector<std::int32_t> multi_source_bfs_parallel(const Window& window,
                                                    std::span<const VertexId> sources,
                                                    const BfsOptions& options = {});

/// Picks the parallel kernel for large windows, the serial one otherwise.
std::vector<std::int32_t> multi_source_bfs(const Window& window, std::span<const VertexId> sources,
                                           const BfsOptions& options = {});

/// Windows at least this large use the parallel kernel in multi_source_bfs.
inline constexpr std::size_t kParallelThreshold = 1 << 16;

}  // namespace dlscape::kernels
