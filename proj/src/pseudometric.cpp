#include "dlscape/pseudometric.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "dlscape/error.hpp"
#include "dlscape/kernels.hpp"

namespace dlscape {

namespace {

constexpr const char* kModule = "pseudometric";

std::string pair_name(const Window& w, VertexId a, VertexId b) {
  return "(" + to_string(w.vertex(a)) + ") and (" + to_string(w.vertex(b)) + ")";
}

// Constant c with fa = fb + c on every vertex where both are stable, if any.
std::optional<std::int64_t> constant_difference(const ScalarField& fa, const ScalarField& fb) {
  std::optional<std::int64_t> c;
  for (VertexId v = 0; v < fa.size(); ++v) {
    if (!fa.is_stable(v) || !fb.is_stable(v)) continue;
    auto diff = fa[v] - fb[v];
    if (!c) {
      c = diff;
    } else if (*c != diff) {
      return std::nullopt;
    }
  }
  return c;
}

}  // namespace

std::vector<ScalarField> point_assigned_fields(std::shared_ptr<const Window> window,
                                               std::span<const VertexId> sample,
                                               std::span<const std::int64_t> schedule, int zone,
                                               std::optional<std::int64_t> tail_window,
                                               kernels::Exec exec) {
  std::vector<ScalarField> fields(sample.size());
  std::vector<std::string> errors(sample.size());
  const auto count = static_cast<std::ptrdiff_t>(sample.size());
#pragma omp parallel for schedule(dynamic) if (exec == kernels::Exec::parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      fields[idx] = u_point_assigned(window, schedule, zone, tail_window, sample[idx],
                                     kernels::Exec::serial)
                        .field;
    } catch (const std::exception& e) {
      errors[idx] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw ValidityError(kModule, "radius", e);
  }
  return fields;
}

RhoMatrix rho_matrix(std::span<const ScalarField> fields) {
  RhoMatrix rho;
  const auto n = fields.size();
  if (n == 0) throw DomainError(kModule, "sample", "empty sample");
  for (const auto& f : fields) {
    if (f.window != fields[0].window || f.zone != fields[0].zone) {
      throw DomainError(kModule, "sample", "fields must share one window and zone");
    }
    rho.sample.push_back(f.anchor);
  }
  const auto& w = *fields[0].window;
  rho.scale = w.space().scale();
  rho.twice_rho.assign(n * n, 0);
  rho.stable.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto x = rho.sample[i];
      const auto y = rho.sample[j];
      if (!fields[i].in_zone(y) || !fields[j].in_zone(x)) {
        throw ValidityError(kModule, "zone",
                            "sample points " + pair_name(w, x, y) + " must lie in the field zone");
      }
      rho.twice_rho[i * n + j] = -(fields[i][y] + fields[j][x]);
      rho.stable[i * n + j] = fields[i].is_stable(y) && fields[j].is_stable(x);
    }
  }
  return rho;
}

RhoMatrix rho_matrix(std::shared_ptr<const Window> window, std::span<const VertexId> sample,
                     std::span<const std::int64_t> schedule, int zone,
                     std::optional<std::int64_t> tail_window) {
  auto fields = point_assigned_fields(std::move(window), sample, schedule, zone, tail_window);
  return rho_matrix(fields);
}

AxiomReport check_pseudometric_axioms(const RhoMatrix& rho, std::span<const std::int64_t> d) {
  AxiomReport report;
  const auto n = rho.n();
  if (d.size() != n * n) throw DomainError(kModule, "sample", "distance matrix size mismatch");
  auto fail = [&](const std::string& what, std::size_t i, std::size_t j) {
    report.violations.push_back(what + " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (rho.is_stable(i, i) && rho.at(i, i) != 0) fail("rho(x,x) != 0", i, i);
    for (std::size_t j = 0; j < n; ++j) {
      if (!rho.is_stable(i, j)) continue;
      if (rho.at(i, j) != rho.at(j, i)) fail("asymmetry", i, j);
      if (rho.at(i, j) < 0) fail("negative rho", i, j);
      if (rho.at(i, j) > 2 * d[i * n + j]) fail("rho > d", i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (!rho.is_stable(j, k) || !rho.is_stable(i, k)) continue;
        ++report.triples_checked;
        if (rho.at(i, k) > rho.at(i, j) + rho.at(j, k)) {
          fail("triangle via " + std::to_string(j), i, k);
        }
      }
    }
  }
  return report;
}

bool anti_triangle_check(const ScalarField& ux, const ScalarField& uy, VertexId y, VertexId z) {
  if (uy.anchor != y) throw DomainError(kModule, "fields", "uy must be anchored at y");
  if (!ux.is_stable(y) || !ux.is_stable(z) || !uy.is_stable(z)) return false;
  return ux[y] + uy[z] <= ux[z];
}

BaseLipschitzResult base_lipschitz_check(const ScalarField& field_a, const ScalarField& field_b) {
  if (field_a.window != field_b.window || field_a.size() != field_b.size()) {
    throw DomainError(kModule, "fields", "fields must share one window and zone");
  }
  const auto& w = *field_a.window;
  BaseLipschitzResult out;
  const VertexId src[] = {field_a.anchor};
  auto d = kernels::multi_source_bfs_serial(w, src);
  out.base_distance = d[field_b.anchor];
  for (VertexId v = 0; v < field_a.size(); ++v) {
    if (!field_a.is_stable(v) || !field_b.is_stable(v)) continue;
    ++out.compared;
    auto diff = field_a[v] - field_b[v];
    out.sup_difference = std::max(out.sup_difference, diff < 0 ? -diff : diff);
  }
  out.holds = out.sup_difference <= out.base_distance;
  return out;
}

ClassPartition equivalence_classes(std::span<const ScalarField> fields) {
  auto rho = rho_matrix(fields);
  const auto n = fields.size();
  ClassPartition partition;
  std::vector<int> block_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (block_of[i] >= 0) continue;
    block_of[i] = static_cast<int>(partition.blocks.size());
    ClassBlock block{{rho.sample[i]}, {0}};
    for (std::size_t j = i + 1; j < n; ++j) {
      auto c = constant_difference(fields[i], fields[j]);
      const bool same = c.has_value();
      if (rho.is_stable(i, j) && same != (rho.at(i, j) == 0)) {
        throw std::logic_error("equivalence_classes: constant-difference grouping disagrees with "
                               "rho = 0 for sample entries " +
                               std::to_string(i) + " and " + std::to_string(j));
      }
      if (same && block_of[j] < 0) {
        block_of[j] = block_of[i];
        block.members.push_back(rho.sample[j]);
        block.offsets.push_back(*c);
      }
    }
    partition.blocks.push_back(std::move(block));
  }
  return partition;
}

}  // namespace dlscape
