#include "dlscape/io.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dlscape/error.hpp"
#include "dlscape/zoo.hpp"

namespace dlscape::io {

namespace {

constexpr const char* kModule = "io";

template <typename T>
T get(const json& doc, const char* key, const char* what) {
  if (!doc.contains(key)) {
    throw DomainError(kModule, key, std::string(what) + " is missing \"" + key + "\"");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(kModule, key, std::string(what) + ": " + e.what());
  }
}

Rational rational_from_json(const json& j, const char* key) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  auto r = Rational(get<std::int64_t>(j, "num", key), get<std::int64_t>(j, "den", key));
  if (r.den == 0) throw DomainError(kModule, key, "zero denominator");
  return r;
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError(kModule, "path", "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError(kModule, "path", "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw DomainError(kModule, "out", "cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

json rational_to_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}}; }

GraphSpace space_from_json(const json& doc) {
  GeneratorSpec spec;
  spec.name = get<std::string>(doc, "generator", "space spec");
  if (doc.contains("params")) {
    for (const auto& [k, v] : doc.at("params").items()) {
      if (!v.is_number_integer()) {
        throw DomainError(kModule, k, "generator parameters must be integers");
      }
      spec.params[k] = v.get<std::int64_t>();
    }
  }
  Rational scale(1);
  if (doc.contains("scale")) scale = rational_from_json(doc.at("scale"), "scale");
  return zoo::build(spec, scale);
}

GraphSpace load_space(const std::string& arg, const std::string& scale_override) {
  GraphSpace space = [&] {
    if (std::filesystem::is_regular_file(arg)) return space_from_json(read_json_file(arg));
    return zoo::build(parse_generator_spec(arg));
  }();
  if (scale_override.empty()) return space;
  return zoo::build(space.spec(), parse_rational(scale_override));
}

json space_to_json(const GraphSpace& space) {
  json params = json::object();
  for (const auto& [k, v] : space.spec().params) params[k] = v;
  return {{"generator", space.spec().name},
          {"params", params},
          {"scale", rational_to_json(space.scale())}};
}

json vertex_to_json(const Vertex& v) { return json::array({v.a, v.b}); }

Vertex vertex_from_json(const json& j) {
  if (j.is_string()) return parse_vertex(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) {
    throw DomainError(kModule, "vertex", "expected a coordinate pair [a, b]");
  }
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

json window_to_json(const Window& window) {
  json verts = json::array();
  for (const auto& v : window.vertices()) verts.push_back(vertex_to_json(v));
  json edges = json::array();
  for (const auto& [a, b] : window.edges()) edges.push_back({a, b});
  return {{"space", space_to_json(window.space())},
          {"base", vertex_to_json(window.base())},
          {"radius", window.radius()},
          {"size", window.size()},
          {"vertices", std::move(verts)},
          {"edges", std::move(edges)},
          {"dist_from_base", window.dist_from_base()}};
}

json field_to_json(const ScalarField& field, const ConvergenceReport* report) {
  const auto& w = *field.window;
  json rows = json::array();
  for (VertexId v = 0; v < field.size(); ++v) {
    rows.push_back({{"id", v},
                    {"vertex", vertex_to_json(w.vertex(v))},
                    {"value", field[v]},
                    {"stable", field.stable[v] != 0},
                    {"last_change", field.last_change[v]}});
  }
  std::size_t stable = 0;
  for (auto s : field.stable) stable += s != 0;
  json doc = {{"kind", to_string(field.kind)},
              {"space", space_to_json(w.space())},
              {"base", vertex_to_json(w.base())},
              {"radius", w.radius()},
              {"zone", field.zone},
              {"anchor", vertex_to_json(w.vertex(field.anchor))},
              {"stable_count", stable},
              {"size", field.size()}};
  if (report) {
    doc["schedule"] = report->schedule;
    doc["tail_window"] = report->tail_window;
    doc["monotonicity_violations"] = report->monotonicity_violations;
  }
  doc["values"] = std::move(rows);
  return doc;
}

std::string field_to_csv(const ScalarField& field) {
  std::ostringstream out;
  out << "id,a,b,value,stable,last_change\n";
  const auto& w = *field.window;
  for (VertexId v = 0; v < field.size(); ++v) {
    const auto& p = w.vertex(v);
    out << v << ',' << p.a << ',' << p.b << ',' << field[v] << ',' << int(field.stable[v] != 0)
        << ',' << field.last_change[v] << '\n';
  }
  return out.str();
}

ScalarField field_from_json(const json& doc) {
  auto space = space_from_json(get<json>(doc, "space", "field"));
  auto base = vertex_from_json(get<json>(doc, "base", "field"));
  auto window = materialize_window(space, base, get<int>(doc, "radius", "field"));
  ScalarField f;
  f.window = window;
  f.kind = parse_field_kind(get<std::string>(doc, "kind", "field"));
  f.zone = get<int>(doc, "zone", "field");
  f.anchor = window->id_of(vertex_from_json(get<json>(doc, "anchor", "field")));
  const auto& rows = get<json>(doc, "values", "field");
  const auto n = window->ball_size(f.zone);
  if (rows.size() != n) {
    throw DomainError(kModule, "values",
                      "expected " + std::to_string(n) + " zone rows, found " +
                          std::to_string(rows.size()));
  }
  f.values.resize(n);
  f.stable.resize(n);
  f.last_change.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i];
    auto id = window->id_of(vertex_from_json(get<json>(row, "vertex", "field row")));
    if (id != i) throw DomainError(kModule, "values", "rows must follow window order");
    f.values[i] = get<std::int64_t>(row, "value", "field row");
    f.stable[i] = get<bool>(row, "stable", "field row");
    f.last_change[i] = get<std::int64_t>(row, "last_change", "field row");
  }
  return f;
}

json finite_space_to_json(const gh::FiniteMetricSpace& space) {
  json rows = json::array();
  for (std::size_t i = 0; i < space.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < space.n; ++j) row.push_back(space.at(i, j));
    rows.push_back(std::move(row));
  }
  return {{"n", space.n},
          {"base", space.base},
          {"scale", rational_to_json(space.scale)},
          {"dist", std::move(rows)}};
}

gh::FiniteMetricSpace finite_space_from_json(const json& doc) {
  auto n = get<std::size_t>(doc, "n", "finite space");
  auto dist = get<std::vector<std::vector<std::int64_t>>>(doc, "dist", "finite space");
  if (dist.size() != n) throw DomainError(kModule, "n", "n does not match the matrix");
  Rational scale(1);
  if (doc.contains("scale")) scale = rational_from_json(doc.at("scale"), "scale");
  return gh::make_space(std::move(dist), get<std::size_t>(doc, "base", "finite space"), scale);
}

json correspondence_to_json(const gh::Correspondence& corr) {
  json pairs = json::array();
  for (const auto& [i, j] : corr.pairs) pairs.push_back({i, j});
  json doc = {{"pairs", std::move(pairs)}, {"distortion", corr.distortion}};
  if (!corr.lower_bound_proved) doc["flag"] = "LOWER-BOUND-NOT-PROVED";
  return doc;
}

json coray_to_json(const CoRay& ray, const ScalarField& field) {
  json path = json::array();
  json values = json::array();
  for (auto v : ray.path) {
    path.push_back(vertex_to_json(field.window->vertex(v)));
    values.push_back(field[v]);
  }
  return {{"length", ray.length()},
          {"truncated", ray.truncated},
          {"path", std::move(path)},
          {"values", std::move(values)}};
}

json rho_to_json(const RhoMatrix& rho, const Window& window) {
  json sample = json::array();
  for (auto v : rho.sample) sample.push_back(vertex_to_json(window.vertex(v)));
  json twice = json::array();
  json stable = json::array();
  for (std::size_t i = 0; i < rho.n(); ++i) {
    json row = json::array();
    json srow = json::array();
    for (std::size_t j = 0; j < rho.n(); ++j) {
      row.push_back(rho.at(i, j));
      srow.push_back(rho.is_stable(i, j));
    }
    twice.push_back(std::move(row));
    stable.push_back(std::move(srow));
  }
  return {{"sample", std::move(sample)},
          {"scale", rational_to_json(rho.scale)},
          {"twice_rho", std::move(twice)},
          {"stable", std::move(stable)}};
}

json partition_to_json(const ClassPartition& partition, const Window& window) {
  json blocks = json::array();
  for (const auto& b : partition.blocks) {
    json members = json::array();
    for (auto v : b.members) members.push_back(vertex_to_json(window.vertex(v)));
    blocks.push_back({{"members", std::move(members)}, {"offsets", b.offsets}});
  }
  return {{"evidence", partition.evidence}, {"blocks", std::move(blocks)}};
}

json gromov_to_json(const GromovReport& report, const Window& window) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"vertex", vertex_to_json(window.vertex(v.vertex))},
                          {"t", v.t},
                          {"value", v.value},
                          {"distance", v.distance}});
  }
  return {{"checked", report.checked},
          {"verified", report.verified},
          {"inconclusive", report.inconclusive},
          {"skipped_t", report.skipped_t},
          {"violations", std::move(violations)}};
}

}  // namespace dlscape::io
