#pragma once

// Brute-force reference implementations used only by the tests. None of them
// share code with the library beyond plain data types.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Point = std::pair<std::int64_t, std::int64_t>;
using Graph = std::map<Point, std::set<Point>>;

inline void add_path(Graph& g, const std::vector<Point>& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    g[path[i]];
    if (i > 0) {
      g[path[i - 1]].insert(path[i]);
      g[path[i]].insert(path[i - 1]);
    }
  }
}

// The H graph cut off at staple index n: the x-axis on [-axis, axis] and, for
// i = 1..n, the segments {(-i, t)}, {(t, i)}, {(i, i - t)} sampled at integers.
inline Graph h_graph(std::int64_t n, std::int64_t axis) {
  Graph g;
  std::vector<Point> path;
  for (auto x = -axis; x <= axis; ++x) path.push_back({x, 0});
  add_path(g, path);
  for (std::int64_t i = 1; i <= n; ++i) {
    path.clear();
    for (std::int64_t t = 0; t <= i; ++t) path.push_back({-i, t});
    for (auto t = -i + 1; t <= i; ++t) path.push_back({t, i});
    for (std::int64_t t = 1; t <= i; ++t) path.push_back({i, i - t});
    add_path(g, path);
  }
  return g;
}

inline std::map<Point, std::int64_t> bfs(const Graph& g, const std::vector<Point>& sources) {
  std::map<Point, std::int64_t> d;
  std::deque<Point> q;
  for (const auto& s : sources) {
    if (g.count(s) && !d.count(s)) {
      d[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    auto p = q.front();
    q.pop_front();
    for (const auto& nb : g.at(p)) {
      if (!d.count(nb)) {
        d[nb] = d[p] + 1;
        q.push_back(nb);
      }
    }
  }
  return d;
}

inline std::vector<Point> sphere(const std::map<Point, std::int64_t>& d, std::int64_t r) {
  std::vector<Point> out;
  for (const auto& [p, dist] : d) {
    if (dist == r) out.push_back(p);
  }
  return out;
}

// u^r(x) = d(x, S_r(x0)) - r on an explicit graph.
inline std::int64_t u_r(const Graph& g, Point x0, Point x, std::int64_t r) {
  auto from_base = bfs(g, {x0});
  auto to_sphere = bfs(g, sphere(from_base, r));
  return to_sphere.at(x) - r;
}

// Finite metric spaces as plain matrices.
using Matrix = std::vector<std::vector<std::int64_t>>;

inline std::int64_t relation_distortion(const Matrix& x, const Matrix& y,
                                        const std::vector<std::pair<int, int>>& rel) {
  std::int64_t worst = 0;
  for (auto [a, b] : rel) {
    for (auto [c, d] : rel) worst = std::max(worst, std::abs(x[a][c] - y[b][d]));
  }
  return worst;
}

// Minimum distortion over every pointed correspondence, by enumerating all
// subsets of X x Y.
inline std::int64_t min_distortion_all_relations(const Matrix& x, int bx, const Matrix& y,
                                                 int by) {
  const int nx = static_cast<int>(x.size());
  const int ny = static_cast<int>(y.size());
  const int cells = nx * ny;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
    if (!(mask & (1u << (bx * ny + by)))) continue;
    std::vector<std::pair<int, int>> rel;
    std::vector<bool> cx(nx), cy(ny);
    for (int k = 0; k < cells; ++k) {
      if (mask & (1u << k)) {
        rel.push_back({k / ny, k % ny});
        cx[k / ny] = true;
        cy[k % ny] = true;
      }
    }
    if (std::count(cx.begin(), cx.end(), false) || std::count(cy.begin(), cy.end(), false)) continue;
    best = std::min(best, relation_distortion(x, y, rel));
  }
  return best;
}

// Pointed GH distance, in half units, by searching every pseudo-metric on the
// disjoint union X + Y that extends both metrics and whose cross distances lie
// on the half-integer grid up to `limit` (half units). Value of a metric:
// max(Hausdorff distance of X and Y, d(base_X, base_Y)).
class AdmissibleMetricSearch {
 public:
  AdmissibleMetricSearch(const Matrix& x, int bx, const Matrix& y, int by, std::int64_t limit)
      : nx_(static_cast<int>(x.size())), ny_(static_cast<int>(y.size())), bx_(bx), by_(by),
        limit_(limit) {
    const int n = nx_ + ny_;
    d_.assign(n, std::vector<std::int64_t>(n, -1));
    for (int i = 0; i < nx_; ++i)
      for (int j = 0; j < nx_; ++j) d_[i][j] = 2 * x[i][j];
    for (int i = 0; i < ny_; ++i)
      for (int j = 0; j < ny_; ++j) d_[nx_ + i][nx_ + j] = 2 * y[i][j];
  }

  std::int64_t run() {
    best_ = std::numeric_limits<std::int64_t>::max();
    assign(0);
    return best_;
  }

 private:
  bool consistent(int i, int j) const {
    const int n = nx_ + ny_;
    for (int k = 0; k < n; ++k) {
      const auto ik = d_[i][k];
      const auto jk = d_[j][k];
      if (ik < 0 || jk < 0) continue;
      const auto ij = d_[i][j];
      if (ij > ik + jk || ik > ij + jk || jk > ij + ik) return false;
    }
    return true;
  }

  std::int64_t value() const {
    std::int64_t h = d_[bx_][nx_ + by_];
    for (int i = 0; i < nx_; ++i) {
      std::int64_t m = std::numeric_limits<std::int64_t>::max();
      for (int j = 0; j < ny_; ++j) m = std::min(m, d_[i][nx_ + j]);
      h = std::max(h, m);
    }
    for (int j = 0; j < ny_; ++j) {
      std::int64_t m = std::numeric_limits<std::int64_t>::max();
      for (int i = 0; i < nx_; ++i) m = std::min(m, d_[i][nx_ + j]);
      h = std::max(h, m);
    }
    return h;
  }

  void assign(int cell) {
    if (cell == nx_ * ny_) {
      best_ = std::min(best_, value());
      return;
    }
    const int i = cell / ny_;
    const int j = nx_ + cell % ny_;
    for (std::int64_t v = 0; v <= limit_; ++v) {
      if (i == bx_ && j == nx_ + by_ && v >= best_) break;
      d_[i][j] = d_[j][i] = v;
      if (consistent(i, j)) assign(cell + 1);
    }
    d_[i][j] = d_[j][i] = -1;
  }

  int nx_, ny_, bx_, by_;
  std::int64_t limit_;
  std::int64_t best_ = 0;
  std::vector<std::vector<std::int64_t>> d_;
};

}  // namespace oracle
