#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DLSCAPE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string run_stderr(const std::string& args) {
  const std::string cmd = std::string(DLSCAPE_CLI) + " " + args + " 2>&1 >/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

}  // namespace

using nlohmann::json;

TEST_CASE("zoo list") {
  auto r = run("zoo list");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j.size() >= 8);
}

TEST_CASE("field on h_graph") {
  auto r = run("field --space h_graph --radius 150 --zone 24 --r-max 120 --step 6");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  int checked = 0;
  for (const auto& row : j["values"]) {
    const auto a = row["vertex"][0].get<long>();
    const auto b = row["vertex"][1].get<long>();
    if (a >= 1 && a <= 8 && b == 0) {
      CHECK(row["value"] == -a);
      ++checked;
    }
    if (a == 0 && b >= 1 && b <= 8) {
      CHECK(row["value"] == b);
      ++checked;
    }
  }
  CHECK(checked == 16);
}

TEST_CASE("outputs are byte-identical for a fixed seed") {
  auto a = run("busemann --space grid2d --radius 40 --zone 8 --seed 5");
  auto b = run("busemann --space grid2d --radius 40 --zone 8 --seed 5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto c = run("check --suite monotonicity --space tree --trials 300 --seed 11");
  auto d = run("check --suite monotonicity --space tree --trials 300 --seed 11");
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("anti-triangle check on h_graph") {
  auto r = run("check --suite anti-triangle --space h_graph --trials 500 --seed 7");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["violations"] == 0);
  CHECK(j["checked"].get<long>() > 0);
}

TEST_CASE("stored fields feed level-set and coray") {
  const std::string path = "test_cli_field.json";
  auto f = run("field --space line --radius 40 --zone 10 -o " + path);
  REQUIRE(f.code == 0);
  auto lv = run("level-set --field " + path + " --value 3");
  CHECK(lv.code == 0);
  auto cr = run("coray --field " + path + " --start 4");
  CHECK(cr.code == 0);
  auto j = json::parse(cr.out);
  CHECK(j["rays"].size() == 1);
  std::remove(path.c_str());
}

TEST_CASE("gh two-point example") {
  const std::string xp = "test_cli_x.json", yp = "test_cli_y.json";
  std::ofstream(xp) << R"({"n": 2, "base": 0, "dist": [[0, 1], [1, 0]]})";
  std::ofstream(yp) << R"({"n": 2, "base": 0, "dist": [[0, 2], [2, 0]]})";
  auto r = run("gh --x " + xp + " --y " + yp);
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["lower"]["num"] == 1);
  CHECK(j["lower"]["den"] == 2);
  CHECK(j["upper"]["num"] == 1);
  std::remove(xp.c_str());
  std::remove(yp.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run("").code == 2);
  CHECK(run("field --space tree:b=0").code == 2);
  CHECK(run("field --space line --radius 10 --zone 30").code == 2);
  CHECK(run("check --suite nope").code == 2);
  auto err = json::parse(run_stderr("window --space tree:b=0"));
  CHECK(err["module"].is_string());
  CHECK(err["parameter"] == "b");
}
