// dlscape: command-line front end for the dlscape library.
//
// Exit status: 0 success, 1 invariant violation (a JSON witness is printed),
// 2 usage or precondition error (module and parameter named on stderr).

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dlscape/checks.hpp"
#include "dlscape/corays.hpp"
#include "dlscape/error.hpp"
#include "dlscape/gh.hpp"
#include "dlscape/io.hpp"
#include "dlscape/pseudometric.hpp"
#include "dlscape/zoo.hpp"

namespace {

using namespace dlscape;
using io::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct SpaceArgs {
  std::string space = "line";
  std::string scale;
  std::string base;
  int radius = 60;
  int zone = 15;

  void attach(CLI::App* app, bool with_zone = true) {
    app->add_option("--space", space, "Generator spec (e.g. tree:b=3) or space-spec JSON file")
        ->capture_default_str();
    app->add_option("--scale", scale, "Rational scale factor overriding the space file");
    app->add_option("--base", base, "Base vertex \"a\" or \"a,b\" (generator default if omitted)");
    app->add_option("--radius", radius, "Window radius R in hops")->capture_default_str();
    if (with_zone) app->add_option("--zone", zone, "Zone radius in hops")->capture_default_str();
  }

  std::shared_ptr<const Window> window() const {
    auto s = io::load_space(space, scale);
    auto b = base.empty() ? s.generator().default_base() : parse_vertex(base);
    return materialize_window(s, b, radius);
  }
};

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    if (!item.empty()) out.push_back(parse_vertex(item));
  }
  return out;
}

std::vector<VertexId> ids_of(const Window& w, const std::vector<Vertex>& vs) {
  std::vector<VertexId> out;
  for (const auto& v : vs) out.push_back(w.id_of(v));
  return out;
}

std::vector<std::int64_t> schedule_for(std::int64_t r_max, std::int64_t step) {
  return make_schedule(r_max, step > 0 ? step : std::max<std::int64_t>(1, r_max / 20));
}

void emit(const std::string& out, const json& doc) { io::write_text(out, doc.dump(2)); }

int report_error(const Error& e) {
  json doc = {{"error", e.kind()},
              {"module", e.module()},
              {"parameter", e.parameter()},
              {"message", e.what()}};
  std::cerr << doc.dump(2) << '\n';
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distance-like functions, Busemann functions and pointed GH bounds on graphs"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "dlscape 1.0.0");
  std::string out;
  app.add_option("--out,-o", out, "Output file (default stdout)");

  int status = kOk;

  // zoo list
  auto* zoo_cmd = app.add_subcommand("zoo", "Generator catalog");
  auto* zoo_list = zoo_cmd->add_subcommand("list", "Print generators, parameters and oracles");
  zoo_cmd->require_subcommand(1);
  zoo_list->callback([&] {
    json doc = json::array();
    for (const auto& g : zoo::catalog()) {
      json params = json::array();
      for (const auto& p : g.params) {
        params.push_back({{"name", p.name}, {"min", p.min_value}, {"default", p.default_value}});
      }
      doc.push_back({{"name", g.name},
                     {"description", g.description},
                     {"params", params},
                     {"oracles", g.oracles}});
    }
    emit(out, doc);
  });

  // window
  SpaceArgs win_args;
  auto* win_cmd = app.add_subcommand("window", "Materialize a window and export it");
  win_args.attach(win_cmd, false);
  win_cmd->callback([&] { emit(out, io::window_to_json(*win_args.window())); });

  // field
  SpaceArgs field_args;
  std::int64_t r_max = 0, step = 0;
  std::optional<std::int64_t> tail;
  std::string anchor, format = "json";
  bool single_r = false;
  auto* field_cmd = app.add_subcommand("field", "Point-assigned field u_{x0} (or u^r with --single)");
  field_args.attach(field_cmd);
  field_cmd->add_option("--r-max", r_max, "Largest schedule radius (default R)");
  field_cmd->add_option("--step", step, "Schedule step (default max(1, r_max / 20))");
  field_cmd->add_option("--tail", tail, "Tail window W in radius units (default 2 * zone)");
  field_cmd->add_option("--anchor", anchor, "Anchor vertex (default: the base)");
  field_cmd->add_flag("--single", single_r, "Only u^r for r = r_max");
  field_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  field_cmd->callback([&] {
    auto w = field_args.window();
    std::optional<VertexId> a;
    if (!anchor.empty()) a = w->id_of(parse_vertex(anchor));
    const auto rm = r_max > 0 ? r_max : w->radius();
    if (single_r) {
      auto f = u_r(w, static_cast<int>(rm), field_args.zone, a);
      io::write_text(out, format == "csv" ? io::field_to_csv(f) : io::field_to_json(f).dump(2));
      return;
    }
    auto sched = schedule_for(rm, step);
    auto res = u_point_assigned(w, sched, field_args.zone, tail, a);
    io::write_text(out, format == "csv" ? io::field_to_csv(res.field)
                                        : io::field_to_json(res.field, &res.report).dump(2));
    if (res.report.monotonicity_violations > 0) status = kViolation;
  });

  // busemann
  SpaceArgs bus_args;
  std::string ray_text = "random";
  std::int64_t ray_T = 0;
  std::uint64_t seed = checks::kDefaultSeed;
  auto* bus_cmd = app.add_subcommand("busemann", "Busemann function along a geodesic ray");
  bus_args.attach(bus_cmd);
  bus_cmd->add_option("--ray", ray_text,
                      "\"random\" (geodesic from the base) or vertices \"a,b;a,b;...\"")
      ->capture_default_str();
  bus_cmd->add_option("--T", ray_T, "Ray parameter T (default R - zone or the ray length)");
  bus_cmd->add_option("--tail", tail, "Tail window in units of t (default 2 * zone)");
  bus_cmd->add_option("--seed", seed, "Seed for --ray random")->capture_default_str();
  bus_cmd->callback([&] {
    auto w = bus_args.window();
    std::vector<VertexId> ray;
    if (ray_text == "random") {
      std::mt19937_64 rng(seed);
      const auto T = ray_T > 0 ? ray_T : w->radius() - bus_args.zone;
      ray = checks::random_geodesic_ray(*w, T, rng);
    } else {
      ray = ids_of(*w, parse_vertex_list(ray_text));
    }
    const auto T = ray_T > 0 ? ray_T : static_cast<std::int64_t>(ray.size()) - 1;
    auto res = busemann(w, ray, T, bus_args.zone, tail);
    auto doc = io::field_to_json(res.field, &res.report);
    json path = json::array();
    for (auto v : ray) path.push_back(io::vertex_to_json(w->vertex(v)));
    doc["ray"] = path;
    emit(out, doc);
    if (res.report.monotonicity_violations > 0) status = kViolation;
  });

  // horo
  SpaceArgs horo_args;
  std::string points_text;
  auto* horo_cmd = app.add_subcommand("horo", "Horofunction of a diverging point sequence");
  horo_args.attach(horo_cmd);
  horo_cmd->add_option("--points", points_text, "Vertices \"a,b;a,b;...\" with increasing d(x0, p)")
      ->required();
  horo_cmd->add_option("--tail", tail, "Tail window in units of d(x0, p) (default 2 * zone)");
  horo_cmd->callback([&] {
    auto w = horo_args.window();
    auto res = horofunction(w, ids_of(*w, parse_vertex_list(points_text)), horo_args.zone, tail);
    emit(out, io::field_to_json(res.field, &res.report));
  });

  // level-set
  std::string field_path;
  std::int64_t level = 0;
  auto* level_cmd = app.add_subcommand("level-set", "Vertices of a stored field at value c");
  level_cmd->add_option("--field", field_path, "Field JSON")->required();
  level_cmd->add_option("--value", level, "Level c")->required();
  level_cmd->callback([&] {
    auto f = io::field_from_json(io::read_json_file(field_path));
    json vs = json::array();
    for (auto v : level_set(f, level)) vs.push_back(io::vertex_to_json(f.window->vertex(v)));
    emit(out, {{"value", level}, {"vertices", vs}});
  });

  // coray
  std::string start_text;
  std::size_t max_paths = 64;
  auto* coray_cmd = app.add_subcommand("coray", "Trace co-rays of a stored field");
  coray_cmd->add_option("--field", field_path, "Field JSON")->required();
  coray_cmd->add_option("--start", start_text, "Start vertex")->required();
  coray_cmd->add_option("--max", max_paths, "Path limit")->capture_default_str();
  coray_cmd->callback([&] {
    auto f = io::field_from_json(io::read_json_file(field_path));
    const auto start = f.window->id_of(parse_vertex(start_text));
    auto trace = trace_corays(f, start, max_paths);
    json rays = json::array();
    bool ok = trace.dead_ends.empty();
    for (const auto& r : trace.rays) {
      auto j = io::coray_to_json(r, f);
      j["gradient_verified"] = verify_gradient(r, f);
      ok = ok && j["gradient_verified"].get<bool>();
      rays.push_back(std::move(j));
    }
    json dead = json::array();
    for (auto v : trace.dead_ends) dead.push_back(io::vertex_to_json(f.window->vertex(v)));
    emit(out, {{"start", io::vertex_to_json(f.window->vertex(start))},
               {"descending_neighbours", uniqueness_probe(f, start)},
               {"path_limit_hit", trace.path_limit_hit},
               {"dead_ends", dead},
               {"rays", rays}});
    if (!ok) status = kViolation;
  });

  // rho
  SpaceArgs rho_args;
  std::string sample_text;
  auto* rho_cmd = app.add_subcommand("rho", "Pseudo-metric rho on a sample, with its partition");
  rho_args.attach(rho_cmd);
  rho_cmd->add_option("--sample", sample_text, "Vertices \"a,b;a,b;...\"")->required();
  rho_cmd->add_option("--r-max", r_max, "Largest schedule radius (default R - max d(x0, sample))");
  rho_cmd->add_option("--step", step, "Schedule step (default max(1, r_max / 20))");
  rho_cmd->add_option("--tail", tail, "Tail window (default 2 * zone)");
  rho_cmd->callback([&] {
    auto w = rho_args.window();
    auto sample = ids_of(*w, parse_vertex_list(sample_text));
    std::int64_t reach = 0;
    for (auto v : sample) reach = std::max<std::int64_t>(reach, w->dist_from_base(v));
    const auto rm = r_max > 0 ? r_max : w->radius() - reach;
    auto fields = point_assigned_fields(w, sample, schedule_for(rm, step), rho_args.zone, tail);
    auto rho = rho_matrix(fields);
    auto axioms = check_pseudometric_axioms(rho, pairwise_dist(*w, sample));
    json doc = io::rho_to_json(rho, *w);
    doc["axiom_violations"] = axioms.violations;
    try {
      doc["partition"] = io::partition_to_json(equivalence_classes(fields), *w);
    } catch (const std::logic_error& e) {
      doc["partition_error"] = e.what();
      status = kViolation;
    }
    emit(out, doc);
    if (!axioms.passed()) status = kViolation;
  });

  // gh
  std::string x_path, y_path;
  gh::SearchOptions search;
  auto* gh_cmd = app.add_subcommand("gh", "Pointed GH bounds between two finite spaces");
  gh_cmd->add_option("--x", x_path, "Finite-space JSON")->required();
  gh_cmd->add_option("--y", y_path, "Finite-space JSON")->required();
  gh_cmd->add_option("--max-points", search.max_points, "Largest space searched")
      ->capture_default_str();
  gh_cmd->add_option("--budget", search.node_budget, "Branch-and-bound node budget")
      ->capture_default_str();
  gh_cmd->callback([&] {
    auto [x, y] = gh::to_common_scale(io::finite_space_from_json(io::read_json_file(x_path)),
                                      io::finite_space_from_json(io::read_json_file(y_path)));
    auto b = gh::gh_bounds(x, y, search);
    auto f = gh::build_eps_isometry(x, y, b.witness);
    json map = f.map;
    emit(out, {{"common_scale", io::rational_to_json(x.scale)},
               {"lower", io::rational_to_json(b.lower)},
               {"upper", io::rational_to_json(b.upper)},
               {"lower_real", (b.lower * Rational(1, x.scale.num)).to_string()},
               {"upper_real", (b.upper * Rational(1, x.scale.num)).to_string()},
               {"exact", b.exact},
               {"correspondence", io::correspondence_to_json(b.witness)},
               {"eps_isometry", {{"map", map}, {"dis", f.dis}, {"net_eps", f.net_eps}}}});
  });

  // experiment pa-gh
  auto* exp_cmd = app.add_subcommand("experiment", "Experiments");
  exp_cmd->require_subcommand(1);
  std::string sx = "pendant_line", sy = "line", scale_x, scale_y, eps_text = "1", map_text = "spine";
  int exp_radius = 60, exp_zone = 15;
  auto* pagh_cmd = exp_cmd->add_subcommand("pa-gh", "Point-assigned fields under an eps-isometry");
  pagh_cmd->add_option("--space-x", sx, "Space X")->capture_default_str();
  pagh_cmd->add_option("--space-y", sy, "Space Y")->capture_default_str();
  pagh_cmd->add_option("--scale-x", scale_x, "Scale override for X");
  pagh_cmd->add_option("--scale-y", scale_y, "Scale override for Y");
  pagh_cmd->add_option("--eps", eps_text, "eps as a rational")->capture_default_str();
  pagh_cmd->add_option("--radius", exp_radius, "X window radius")->capture_default_str();
  pagh_cmd->add_option("--zone", exp_zone, "X zone")->capture_default_str();
  pagh_cmd->add_option("--map", map_text, "identity, spine or scale:K")->capture_default_str();
  pagh_cmd->callback([&] {
    gh::PaGhConfig cfg{io::load_space(sx, scale_x), io::load_space(sy, scale_y),
                       parse_rational(eps_text), exp_radius, exp_zone, {},
                       gh::parse_vertex_map(map_text)};
    auto rep = gh::pa_gh_experiment(cfg);
    json unstable = json::array();
    for (const auto& v : rep.unstable) unstable.push_back(io::vertex_to_json(v));
    emit(out, {{"space_x", io::space_to_json(cfg.space_x)},
               {"space_y", io::space_to_json(cfg.space_y)},
               {"eps", io::rational_to_json(cfg.eps)},
               {"map", cfg.map.to_string()},
               {"common_scale", rep.common_scale},
               {"compared", rep.compared},
               {"max_abs_deviation", rep.max_abs_deviation},
               {"max_x_minus_y", rep.max_x_minus_y},
               {"max_y_minus_x", rep.max_y_minus_x},
               {"map_dis", rep.map_dis},
               {"map_net", rep.map_net},
               {"map_is_2eps_isometry", rep.map_is_2eps_isometry},
               {"within_8eps", rep.within_8eps},
               {"within_4eps", rep.within_4eps},
               {"conclusive", rep.conclusive()},
               {"unstable", unstable}});
    if (rep.conclusive() && (!rep.within_8eps || !rep.within_4eps)) status = kViolation;
  });

  // check
  std::string suite;
  SpaceArgs check_args;
  std::optional<int> check_radius, check_zone;
  std::optional<std::size_t> trials;
  auto* check_cmd = app.add_subcommand("check", "Run an invariant suite");
  check_cmd->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(checks::suite_names()));
  check_cmd->add_option("--space", check_args.space, "Generator spec or space-spec file")
      ->capture_default_str();
  check_cmd->add_option("--scale", check_args.scale, "Scale override");
  check_cmd->add_option("--radius", check_radius, "Window radius (default per generator)");
  check_cmd->add_option("--zone", check_zone, "Zone (default per generator)");
  check_cmd->add_option("--trials", trials, "Trials (default per suite)");
  check_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  check_cmd->callback([&] {
    checks::SuiteOptions opt{io::load_space(check_args.space, check_args.scale), check_radius,
                             check_zone, trials, seed};
    auto res = checks::run_suite(suite, opt);
    auto doc = res.to_json();
    doc["space"] = io::space_to_json(opt.space);
    doc["seed"] = seed;
    emit(out, doc);
    if (!res.passed()) status = kViolation;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump(2) << '\n';
    return kUsage;
  }
  return status;
}
