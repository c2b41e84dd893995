#include "dlscape/zoo.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "dlscape/error.hpp"

namespace dlscape::zoo {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

class Line final : public Generator {
 public:
  bool contains(const Vertex& v) const override { return v.b == 0; }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    out.push_back({v.a - 1, 0});
    out.push_back({v.a + 1, 0});
  }
  int degree_bound() const override { return 2; }
};

class HalfLine final : public Generator {
 public:
  bool contains(const Vertex& v) const override { return v.b == 0 && v.a >= 0; }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    if (v.a > 0) out.push_back({v.a - 1, 0});
    out.push_back({v.a + 1, 0});
  }
  int degree_bound() const override { return 2; }
};

class Grid2d final : public Generator {
 public:
  bool contains(const Vertex&) const override { return true; }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    out.push_back({v.a - 1, v.b});
    out.push_back({v.a + 1, v.b});
    out.push_back({v.a, v.b - 1});
    out.push_back({v.a, v.b + 1});
  }
  int degree_bound() const override { return 4; }
};

// Rooted b-ary tree; vertex (depth, index) with index < b^depth.
class Tree final : public Generator {
 public:
  explicit Tree(std::int64_t b) : b_(b) {
    std::int64_t width = 1;
    while (width <= std::numeric_limits<std::int64_t>::max() / b_ && max_depth_ < 4096) {
      width *= b_;
      ++max_depth_;
      if (b_ == 1) break;
    }
    if (b_ == 1) max_depth_ = std::numeric_limits<std::int64_t>::max() - 1;
  }
  bool contains(const Vertex& v) const override {
    if (v.a < 0 || v.a > max_depth_ || v.b < 0) return false;
    if (b_ == 1) return v.b == 0;
    std::int64_t width = 1;
    for (std::int64_t d = 0; d < v.a; ++d) width *= b_;
    return v.b < width;
  }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    if (v.a > 0) out.push_back({v.a - 1, v.b / b_});
    if (v.a >= max_depth_) {
      throw ResourceError("zoo", "radius",
                          "tree depth " + std::to_string(v.a + 1) +
                              " overflows 64-bit vertex indices; lower --radius");
    }
    for (std::int64_t c = 0; c < b_; ++c) out.push_back({v.a + 1, v.b * b_ + c});
  }
  int degree_bound() const override { return static_cast<int>(b_ + 1); }

 private:
  std::int64_t b_;
  std::int64_t max_depth_ = 0;
};

// Upper half plane points on the x-axis or on the staples
//   L1_i = {(-i, t)}, L2_i = {(t, i)}, L3_i = {(i, i - t)}.
// (x, y) with |x| < y sits on L2_y, with |x| > y >= 1 on a vertical segment,
// with |x| = y >= 1 on a corner.
class HGraph final : public Generator {
 public:
  bool contains(const Vertex& v) const override { return v.b >= 0; }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    const auto x = v.a;
    const auto y = v.b;
    const auto ax = x < 0 ? -x : x;
    if (y == 0) {
      out.push_back({x - 1, 0});
      out.push_back({x + 1, 0});
      if (x != 0) out.push_back({x, 1});
      return;
    }
    if (ax < y) {
      out.push_back({x - 1, y});
      out.push_back({x + 1, y});
    } else if (ax > y) {
      out.push_back({x, y - 1});
      out.push_back({x, y + 1});
    } else {
      out.push_back({x > 0 ? x - 1 : x + 1, y});
      out.push_back({x, y - 1});
    }
  }
  int degree_bound() const override { return 3; }
};

class PendantLine final : public Generator {
 public:
  bool contains(const Vertex& v) const override { return v.b == 0 || v.b == 1; }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    if (v.b == 1) {
      out.push_back({v.a, 0});
      return;
    }
    out.push_back({v.a - 1, 0});
    out.push_back({v.a + 1, 0});
    out.push_back({v.a, 1});
  }
  int degree_bound() const override { return 3; }
};

// C_m x {0, 1, 2, ...}; vertex (level, angle).
class Cylinder final : public Generator {
 public:
  explicit Cylinder(std::int64_t m) : m_(m) {}
  bool contains(const Vertex& v) const override { return v.a >= 0 && v.b >= 0 && v.b < m_; }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    if (v.a > 0) out.push_back({v.a - 1, v.b});
    out.push_back({v.a + 1, v.b});
    out.push_back({v.a, floor_mod(v.b - 1, m_)});
    out.push_back({v.a, floor_mod(v.b + 1, m_)});
  }
  int degree_bound() const override { return 4; }

 private:
  std::int64_t m_;
};

// Apex (0,0) joined to m spokes with h interior vertices each, ending on a
// cycle C_m at level h + 1, continued by the half cylinder C_m x [h+1, inf).
class Stick final : public Generator {
 public:
  Stick(std::int64_t m, std::int64_t h) : m_(m), h_(h) {}
  bool contains(const Vertex& v) const override {
    if (v.a == 0) return v.b == 0;
    return v.a > 0 && v.b >= 0 && v.b < m_;
  }
  void neighbors(const Vertex& v, std::vector<Vertex>& out) const override {
    if (v.a == 0) {
      for (std::int64_t j = 0; j < m_; ++j) out.push_back({1, j});
      return;
    }
    out.push_back(v.a == 1 ? Vertex{0, 0} : Vertex{v.a - 1, v.b});
    out.push_back({v.a + 1, v.b});
    if (v.a > h_) {
      out.push_back({v.a, floor_mod(v.b - 1, m_)});
      out.push_back({v.a, floor_mod(v.b + 1, m_)});
    }
  }
  int degree_bound() const override { return static_cast<int>(std::max<std::int64_t>(m_, 4)); }

 private:
  std::int64_t m_;
  std::int64_t h_;
};

std::int64_t cyclic_distance(std::int64_t a, std::int64_t b, std::int64_t m) {
  auto d = floor_mod(a - b, m);
  return std::min(d, m - d);
}

}  // namespace

const std::vector<GeneratorInfo>& catalog() {
  static const std::vector<GeneratorInfo> kCatalog = {
      {"line", "integer line Z", {}, {"point_assigned", "rho"}},
      {"halfline", "one-ended ray {0, 1, 2, ...}", {}, {"point_assigned", "rho"}},
      {"tree", "rooted b-ary tree; b = 1 is the halfline", {{"b", 1, 2}}, {"point_assigned", "rho"}},
      {"grid2d", "square lattice Z^2", {}, {"point_assigned", "rho"}},
      {"h_graph", "x-axis plus nested staples joining (-i,0) and (i,0) through height i", {},
       {"point_assigned", "sphere"}},
      {"stick",
       "apex joined by m spokes of h interior vertices to a cycle C_m continued by a half "
       "cylinder",
       {{"m", 3, 6}, {"h", 0, 2}},
       {"point_assigned"}},
      {"pendant_line", "integer line with one leaf hanging from every integer", {},
       {"point_assigned", "rho"}},
      {"cylinder", "half cylinder C_m x {0, 1, ...}", {{"m", 3, 6}}, {"point_assigned"}},
  };
  return kCatalog;
}

GeneratorSpec normalize(const GeneratorSpec& spec) {
  const auto& cat = catalog();
  auto it = std::find_if(cat.begin(), cat.end(), [&](const auto& g) { return g.name == spec.name; });
  if (it == cat.end()) {
    throw DomainError("zoo", "space", "unknown generator '" + spec.name + "'; see `zoo list`");
  }
  GeneratorSpec out{spec.name, {}};
  for (const auto& p : it->params) {
    auto found = spec.params.find(p.name);
    auto value = found == spec.params.end() ? p.default_value : found->second;
    if (value < p.min_value) {
      throw DomainError("zoo", p.name,
                        spec.name + " parameter " + p.name + " must be >= " +
                            std::to_string(p.min_value) + ", got " + std::to_string(value));
    }
    out.params[p.name] = value;
  }
  for (const auto& [k, v] : spec.params) {
    if (!out.params.contains(k)) {
      throw DomainError("zoo", k, spec.name + " has no parameter '" + k + "'");
    }
  }
  return out;
}

GraphSpace build(const GeneratorSpec& raw, Rational scale) {
  auto spec = normalize(raw);
  std::shared_ptr<const Generator> gen;
  if (spec.name == "line") {
    gen = std::make_shared<Line>();
  } else if (spec.name == "halfline") {
    gen = std::make_shared<HalfLine>();
  } else if (spec.name == "tree") {
    gen = std::make_shared<Tree>(spec.param("b"));
  } else if (spec.name == "grid2d") {
    gen = std::make_shared<Grid2d>();
  } else if (spec.name == "h_graph") {
    gen = std::make_shared<HGraph>();
  } else if (spec.name == "stick") {
    gen = std::make_shared<Stick>(spec.param("m"), spec.param("h"));
  } else if (spec.name == "pendant_line") {
    gen = std::make_shared<PendantLine>();
  } else {
    gen = std::make_shared<Cylinder>(spec.param("m"));
  }
  return GraphSpace(std::move(spec), std::move(gen), scale);
}

Quantity parse_quantity(const std::string& text) {
  if (text == "point_assigned") return Quantity::point_assigned;
  if (text == "rho") return Quantity::rho;
  if (text == "sphere") return Quantity::sphere;
  throw DomainError("zoo", "quantity", "unknown oracle quantity '" + text + "'");
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::point_assigned: return "point_assigned";
    case Quantity::rho: return "rho";
    case Quantity::sphere: return "sphere";
  }
  return "?";
}

std::int64_t stick_apex_distance(const GeneratorSpec& spec, const Vertex& v) {
  (void)spec;
  return v.a;
}

namespace {

std::int64_t tree_distance(std::int64_t b, Vertex x, Vertex y) {
  std::int64_t d = 0;
  while (x.a > y.a) { x = {x.a - 1, x.b / b}; ++d; }
  while (y.a > x.a) { y = {y.a - 1, y.b / b}; ++d; }
  while (x != y) {
    x = {x.a - 1, x.b / b};
    y = {y.a - 1, y.b / b};
    d += 2;
  }
  return d;
}

// Closed-form hop distance where the generator admits one.
std::optional<std::int64_t> closed_form_distance(const GeneratorSpec& spec, const Vertex& x,
                                                 const Vertex& y) {
  const auto& n = spec.name;
  if (n == "line" || n == "halfline") return std::llabs(x.a - y.a);
  if (n == "grid2d") return std::llabs(x.a - y.a) + std::llabs(x.b - y.b);
  if (n == "tree") return tree_distance(spec.param("b"), x, y);
  if (n == "pendant_line") {
    if (x == y) return 0;
    return std::llabs(x.a - y.a) + x.b + y.b;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Expectation> expected_point_assigned(const GeneratorSpec& raw, const Vertex& base,
                                                   const Vertex& x) {
  auto spec = normalize(raw);
  const auto& n = spec.name;
  Expectation e{"u_base(x)", x, base, 0, 0};
  if (n == "line" || n == "grid2d" || (n == "tree" && spec.param("b") >= 2)) {
    // Every geodesic extends past its endpoint: u_base = -d(base, .).
    e.value = -*closed_form_distance(spec, base, x);
    return e;
  }
  if (n == "halfline" || n == "tree") {
    e.value = base.a - x.a;
    return e;
  }
  if (n == "pendant_line") {
    e.value = x.b - base.b - std::llabs(x.a - base.a);
    return e;
  }
  if (n == "cylinder" && base.a == 0) {
    e.value = -(x.a + cyclic_distance(x.b, base.b, spec.param("m")));
    return e;
  }
  if (n == "stick") {
    e.value = stick_apex_distance(spec, base) - stick_apex_distance(spec, x);
    e.tolerance = base == Vertex{0, 0} ? 0 : spec.param("m") / 2;
    return e;
  }
  if (n == "h_graph" && base == Vertex{0, 0}) {
    if (x.b == 0) {
      e.value = -std::llabs(x.a);
      return e;
    }
    if (x.a == 0) {
      e.value = x.b;
      return e;
    }
    if (std::llabs(x.a) == x.b) {
      e.value = 0;
      return e;
    }
  }
  return std::nullopt;
}

std::optional<Expectation> expected_twice_rho(const GeneratorSpec& raw, const Vertex& x,
                                              const Vertex& y) {
  auto spec = normalize(raw);
  const auto& n = spec.name;
  Expectation e{"2 rho(x,y)", x, y, 0, 0};
  if (n == "line" || n == "grid2d" || n == "pendant_line" ||
      (n == "tree" && spec.param("b") >= 2)) {
    auto d = *closed_form_distance(spec, x, y);
    // pendant_line: u_x(y) + u_y(x) = -2|x.a - y.a| (leaf offsets cancel).
    e.value = n == "pendant_line" ? 2 * std::llabs(x.a - y.a) : 2 * d;
    return e;
  }
  if (n == "halfline" || n == "tree") {
    e.value = 0;
    return e;
  }
  return std::nullopt;
}

std::vector<Expectation> oracle(const GeneratorSpec& raw, Quantity quantity, std::int64_t extent) {
  auto spec = normalize(raw);
  std::vector<Expectation> out;
  const auto& n = spec.name;
  if (quantity == Quantity::sphere) {
    if (n != "h_graph") {
      throw DomainError("zoo", "quantity", "sphere oracle is only tabulated for h_graph");
    }
    if (extent <= 0 || extent % 6 != 0) {
      throw DomainError("zoo", "extent", "h_graph sphere oracle needs n > 0 with n % 6 == 0");
    }
    for (auto i = extent / 2; i <= extent; ++i) {
      out.push_back({"(i, n-i)", {i, extent - i}, {0, 0}, extent, 0});
      out.push_back({"(-i, n-i)", {-i, extent - i}, {0, 0}, extent, 0});
    }
    for (auto i = extent / 3; i <= extent / 2; ++i) {
      out.push_back({"(3i-n, i)", {3 * i - extent, i}, {0, 0}, extent, 0});
      out.push_back({"(n-3i, i)", {extent - 3 * i, i}, {0, 0}, extent, 0});
    }
    return out;
  }
  if (quantity == Quantity::point_assigned) {
    if (n == "h_graph") {
      for (std::int64_t k = 1; k <= extent; ++k) {
        out.push_back({"p_" + std::to_string(k), {k, 0}, {0, 0}, -k, 0});
        out.push_back({"x_" + std::to_string(k), {0, k}, {0, 0}, k, 0});
        out.push_back({"q_" + std::to_string(k), {k, k}, {0, 0}, 0, 0});
      }
      return out;
    }
    std::vector<Vertex> probes;
    if (n == "line" || n == "halfline") {
      for (std::int64_t k = 0; k <= extent; ++k) probes.push_back({k, 0});
    } else if (n == "tree") {
      for (std::int64_t k = 0; k <= std::min<std::int64_t>(extent, 20); ++k) probes.push_back({k, 0});
    } else if (n == "grid2d") {
      for (std::int64_t k = 0; k <= extent; ++k) probes.push_back({k, -k / 2});
    } else if (n == "pendant_line") {
      for (std::int64_t k = 0; k <= extent; ++k) probes.push_back({k, k % 2});
    } else if (n == "cylinder" || n == "stick") {
      auto m = spec.param("m");
      for (std::int64_t k = 1; k <= extent; ++k) probes.push_back({k, k % m});
      probes.push_back({0, 0});
    }
    for (const auto& p : probes) {
      if (auto e = expected_point_assigned(spec, {0, 0}, p)) out.push_back(*e);
    }
    return out;
  }
  // rho
  if (n == "h_graph" || n == "stick" || n == "cylinder") {
    throw DomainError("zoo", "quantity", "no closed-form rho for " + n);
  }
  for (std::int64_t k = 1; k <= extent; ++k) {
    Vertex x{0, 0};
    Vertex y = n == "grid2d" ? Vertex{k, 1} : (n == "tree" ? Vertex{k, 0} : Vertex{k, 0});
    if (auto e = expected_twice_rho(spec, x, y)) out.push_back(*e);
  }
  return out;
}

}  // namespace dlscape::zoo
