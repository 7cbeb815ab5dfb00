#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "appell/report.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(APPELL_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) res.out.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

const std::string kTermFlags =
    "--a1 1 --a2 1 --b1 1 --b2 1 --c 2 --t1 2 --t2 2 --k1 1 --k2 1";

}  // namespace

TEST_CASE("eval emits a terminating evaluation as JSON, exit 0") {
  auto r = run_cli("eval f3d1 " + kTermFlags + " --x 0.5 --y 0.5 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["function"] == "f3d1");
  CHECK(j["terminated"] == true);
  CHECK(j["converged"] == true);
  CHECK(j["value"][0].get<double>() == Catch::Approx(2.5916666666666668).epsilon(1e-14));
  CHECK(j["value"][1].get<double>() == 0.0);
}

TEST_CASE("eval at the origin returns one") {
  auto r = run_cli("eval f3d1 " + kTermFlags + " --x 0 --y 0 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"][0] == 1.0);
  CHECK(j["value"][1] == 0.0);
}

TEST_CASE("divergence exits with code 2 and a report") {
  auto r = run_cli("eval f3d1 --a1 1 --a2 1 --b1 1 --b2 1 --c 2 --t1 1.5 --t2 2 "
                   "--k1 2 --k2 1 --x 0.3 --y 0.1 --format json");
  CHECK(r.exit_code == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["diverged"] == true);
  CHECK(j["converged"] == false);
}

TEST_CASE("usage errors exit with 64") {
  CHECK(run_cli("eval f3d1 --no-such-flag 1").exit_code == 64);
  CHECK(run_cli("frobnicate").exit_code == 64);
  CHECK(run_cli("eval nosuchfn --x 0").exit_code == 64);
  CHECK(run_cli("table f3d1 " + kTermFlags).exit_code == 64);  // missing sweep
}

TEST_CASE("domain errors exit with 65") {
  // c is a nonpositive integer
  CHECK(run_cli("eval f3d1 --a1 1 --a2 1 --b1 1 --b2 1 --c -2 --t1 2 --t2 2 "
                "--k1 1 --k2 1 --x 0.1 --y 0.1")
            .exit_code == 65);
  CHECK(run_cli("check --panel /nonexistent.json").exit_code == 65);
}

TEST_CASE("complex flag literals") {
  auto r = run_cli("eval f3d1 --a1 1+1i --a2 1 --b1 1 --b2 1 --c 2 --t1 2 --t2 2 "
                   "--k1 1 --k2 1 --x 0.2+0.1i --y -0.3 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["terminated"] == true);
  CHECK(j["value"][1].get<double>() != 0.0);
}

TEST_CASE("check subcommand: one group, all pass") {
  auto r = run_cli("check --group CT1 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["identities"].size() == 10);
  CHECK(j["summary"]["failed"] == 0);
}

TEST_CASE("check subcommand: QR1 has 45 entries") {
  auto r = run_cli("check --group QR1 --format json --no-exact");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["identities"].size() == 45);
}

TEST_CASE("check with an empty panel reports no cases, exit 0") {
  const std::string path = "/tmp/appell_empty_panel.json";
  std::ofstream(path) << "[]";
  auto r = run_cli("check --group all --panel " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("no cases") != std::string::npos);
}

TEST_CASE("check with a user panel file") {
  const std::string path = "/tmp/appell_user_panel.json";
  std::ofstream(path) << R"([{"label":"u1",
    "params":{"a1":"5/4","a2":"3/2","b1":"7/4","b2":"5/4","c":"7/2",
              "t1":2,"t2":2,"k1":1,"k2":1},
    "point":{"x":"3/10","y":"-3/10"}}])";
  auto r = run_cli("check --group DE1 --panel " + path + " --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["identities"].size() == 2);
  for (const auto& e : j["identities"]) {
    CHECK(e["pass"] == true);
    for (const auto& c : e["cases"]) {
      CHECK(c["case"] == "u1");
      CHECK(c["exact_zero"] == true);
    }
  }
  // malformed panel
  std::ofstream(path) << "{not json";
  CHECK(run_cli("check --panel " + path).exit_code == 65);
}

TEST_CASE("list subcommand") {
  auto r = run_cli("list --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() == 224);
  auto r2 = run_cli("list --group QR2 --format json");
  auto j2 = nlohmann::json::parse(r2.out);
  CHECK(j2.size() == 17);
}

TEST_CASE("table: one axis, three rows, first row trivial") {
  auto r = run_cli("table f3d1 " + kTermFlags +
                   " --y 0 --sweep x=0,0.25,0.5 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["cells"].size() == 3);
  CHECK(j["cells"][0]["value"][0] == 1.0);
}

TEST_CASE("table: two axes, row-major order, cells match single evals") {
  auto r = run_cli("table f3d1 " + kTermFlags +
                   " --sweep x=0.1,0.2,0.3 --sweep y=0.1,0.2,0.3 --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["cells"].size() == 9);
  // row-major: x outer, y inner
  CHECK(j["cells"][1]["x"][0] == 0.1);
  CHECK(j["cells"][1]["y"][0] == 0.2);
  CHECK(j["cells"][3]["x"][0] == 0.2);
  CHECK(j["cells"][3]["y"][0] == 0.1);
  auto single = run_cli("eval f3d1 " + kTermFlags + " --x 0.2 --y 0.1 --format json");
  auto js = nlohmann::json::parse(single.out);
  CHECK(j["cells"][3]["value"][0].get<double>() == js["value"][0].get<double>());
}

TEST_CASE("JSON output is canonical: parse and re-render is byte-identical") {
  for (const std::string& args :
       {std::string("eval f3d1 ") + kTermFlags + " --x 0.3333 --y -0.125 --format json",
        std::string("check --group DE1 --format json"),
        std::string("list --group DF1 --format json"),
        std::string("table f3d1 ") + kTermFlags + " --y 0 --sweep x=0,0.5 --format json"}) {
    auto r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    const auto parsed = appell::OrderedJson::parse(r.out);
    CHECK(appell::write_canonical_json(parsed) == r.out);
  }
}

TEST_CASE("policy cap override via environment variable") {
  // APPELL_MAX_TERMS clips the lattice caps: a convergent evaluation truncates
  const std::string cmd = std::string("APPELL_MAX_TERMS=4 ") + APPELL_CLI_PATH +
                          " eval f3 --a1 1 --a2 1 --b1 1 --b2 1 --c 2 --x 0.5 --y 0"
                          " --format json 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  pclose(pipe);
  auto j = nlohmann::json::parse(out);
  CHECK(j["terms_used"].get<long>() <= 15);  // unclipped run uses ~48
}

TEST_CASE("csv output for eval") {
  auto r = run_cli("eval 1f0d --a 1 --t 2 --k 1 --z 1 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("value_re,value_im") != std::string::npos);
  CHECK(r.out.find("\n5,") != std::string::npos);
}
