#include "dlscape/kernels.hpp"

#include <atomic>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dlscape::kernels {

namespace {

bool entered(std::span<const std::uint8_t> allowed, VertexId v) {
  return allowed.empty() || allowed[v] != 0;
}

}  // namespace

std::vector<std::int32_t> multi_source_bfs_serial(const Window& window,
                                                  std::span<const VertexId> sources,
                                                  const BfsOptions& options) {
  std::vector<std::int32_t> dist(window.size(), kUnreached);
  std::vector<VertexId> queue;
  queue.reserve(sources.size());
  for (auto s : sources) {
    if (!entered(options.allowed, s) || dist[s] == 0) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    const auto next = dist[v] + 1;
    if (dist[v] >= options.max_depth) continue;
    for (auto w : window.neighbors(v)) {
      if (dist[w] != kUnreached || !entered(options.allowed, w)) continue;
      dist[w] = next;
      queue.push_back(w);
    }
  }
  return dist;
}

std::vector<std::int32_t> multi_source_bfs_parallel(const Window& window,
                                                    std::span<const VertexId> sources,
                                                    const BfsOptions& options) {
  std::vector<std::int32_t> dist(window.size(), kUnreached);
  std::vector<VertexId> frontier;
  for (auto s : sources) {
    if (!entered(options.allowed, s) || dist[s] == 0) continue;
    dist[s] = 0;
    frontier.push_back(s);
  }

  std::int32_t level = 0;
  std::vector<VertexId> next;
  while (!frontier.empty() && level < options.max_depth) {
    next.clear();
    const auto fsize = static_cast<std::ptrdiff_t>(frontier.size());
#pragma omp parallel
    {
      std::vector<VertexId> local;
#pragma omp for schedule(static) nowait
      for (std::ptrdiff_t i = 0; i < fsize; ++i) {
        for (auto w : window.neighbors(frontier[static_cast<std::size_t>(i)])) {
          if (!entered(options.allowed, w)) continue;
          std::atomic_ref<std::int32_t> slot(dist[w]);
          auto expected = kUnreached;
          if (slot.load(std::memory_order_relaxed) == kUnreached &&
              slot.compare_exchange_strong(expected, level + 1, std::memory_order_relaxed)) {
            local.push_back(w);
          }
        }
      }
#pragma omp critical(dlscape_bfs_merge)
      next.insert(next.end(), local.begin(), local.end());
    }
    frontier.swap(next);
    ++level;
  }
  return dist;
}

std::vector<std::int32_t> multi_source_bfs(const Window& window, std::span<const VertexId> sources,
                                           const BfsOptions& options) {
#ifdef _OPENMP
  if (window.size() >= kParallelThreshold && omp_get_max_threads() > 1) {
    return multi_source_bfs_parallel(window, sources, options);
  }
#endif
  return multi_source_bfs_serial(window, sources, options);
}

}  // namespace dlscape::kernels
