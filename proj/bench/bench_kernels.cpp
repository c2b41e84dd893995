// Serial reference kernels against their OpenMP counterparts.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "dlscape/dlfield.hpp"
#include "dlscape/kernels.hpp"
#include "dlscape/zoo.hpp"

using namespace dlscape;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-36s serial %8.4f s  parallel %8.4f s  speedup %5.2fx  %s\n", name, serial,
              parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());

  auto grid = materialize_window(zoo::build(parse_generator_spec("grid2d")), {0, 0}, 500);
  const VertexId src[] = {Window::base_id()};
  std::vector<std::int32_t> a, b;
  const double s1 = best_of(3, [&] { a = kernels::multi_source_bfs_serial(*grid, src); });
  const double p1 = best_of(3, [&] { b = kernels::multi_source_bfs_parallel(*grid, src); });
  row("BFS grid2d R=500", s1, p1, a == b);

  auto tree = materialize_window(zoo::build(parse_generator_spec("tree:b=2")), {0, 0}, 18);
  const double s2 = best_of(3, [&] { a = kernels::multi_source_bfs_serial(*tree, src); });
  const double p2 = best_of(3, [&] { b = kernels::multi_source_bfs_parallel(*tree, src); });
  row("BFS tree:b=2 R=18", s2, p2, a == b);

  auto h = materialize_window(zoo::build(parse_generator_spec("h_graph")), {0, 0}, 150);
  const auto schedule = make_schedule(120, 6);
  FieldResult fs, fp;
  const double s3 = best_of(3, [&] { fs = u_point_assigned(h, schedule, 24, {}, {}, kernels::Exec::serial); });
  const double p3 = best_of(3, [&] { fp = u_point_assigned(h, schedule, 24, {}, {}, kernels::Exec::parallel); });
  row("point-assigned h_graph R=150", s3, p3,
      fs.field.values == fp.field.values && fs.field.stable == fp.field.stable);
  return 0;
}
