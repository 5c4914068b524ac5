#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SINGODE_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(SINGODE_DATA) + "/" + name; }

fs::path scratch(const char* name) {
  const fs::path p = fs::path(SINGODE_SCRATCH) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("analyze example 4 at the origin") {
  const Run r = run("analyze --input " + data("ex4.json") + " --point 0,0");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["directions"].size() == 3);
  CHECK(j["directions"][0]["lambda"].get<double>() == doctest::Approx(2.0));
  CHECK(j["directions"][1]["lambda"].get<double>() == doctest::Approx(-1.0));
  CHECK(j["directions"][2]["lambda"].get<double>() == doctest::Approx(2.0));
  CHECK(j["directions"][1]["verdict"] == "NegativeRationalResonant");
}

TEST_CASE("analyze off the locus and with a metric") {
  Run r = run("analyze --input " + data("ex4.json") + " --point 0.5,0");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == "NotSingular");

  r = run("analyze --input " + data("metric_c_y.json") + " --point 0,0");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["mu"][2].get<double>() == -1.0);
  CHECK(j.contains("geodesic_condition"));
}

TEST_CASE("grid analysis") {
  const Run r = run("analyze --input " + data("ex1.json") + " --grid --window -1,1,-1,1 --nx 5 --ny 5");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["lattice"].size() == 25);
  CHECK(!j["crossings"].empty());
}

TEST_CASE("exit codes") {
  CHECK(run("analyze --input " + data("ex4.json")).code == 2);
  CHECK(run("analyze --input /nonexistent.json --point 0,0").code == 2);
  CHECK(run("bogus").code == 2);
  const fs::path dir = scratch("codes");
  CHECK(run("trace --input " + data("ex2.json") + " --point 0,0 --dir 0 --offsets 0.001 --out " +
            (dir / "t.csv").string())
            .code == 4);
  CHECK(run("trace --input " + data("ex4_sqrt2.json") + " --point 0,0 --dir 0 --offsets 0 --out " +
            (dir / "t.csv").string())
            .code == 3);
  CHECK(run("portrait --input " + data("ex4.json") + " --window 1,-1,0,1 --out " +
            (dir / "p.svg").string())
            .code == 2);
}

TEST_CASE("trace writes one file per offset") {
  const fs::path dir = scratch("trace");
  const Run r = run("trace --input " + data("ex4_sqrt2.json") +
                    " --point 0,0 --dir 1 --offsets -1e-6,-2e-6 --out " + (dir / "fam.csv").string());
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["trajectories"].size() == 2);
  CHECK(fs::exists(dir / "fam_0.csv"));
  CHECK(fs::exists(dir / "fam_1.csv"));
  CHECK(fs::exists(dir / "fam_summary.json"));
  CHECK(slurp(dir / "fam_0.csv").find("t,x,y,p") != std::string::npos);
}

TEST_CASE("portrait of the zero equation") {
  const fs::path dir = scratch("portrait");
  REQUIRE(run("portrait --input " + data("zero.json") + " --window -1,1,-1,1 --out " +
              (dir / "z.csv").string())
              .code == 0);
  CHECK(slurp(dir / "z.csv").find("arrows=0") != std::string::npos);
  REQUIRE(run("portrait --input " + data("ex4.json") + " --window -1,1,-1,1 --out " +
              (dir / "e.svg").string())
              .code == 0);
  CHECK(slurp(dir / "e.svg").find("<svg") != std::string::npos);
}

TEST_CASE("output is byte-identical across runs") {
  const std::string analyze = "analyze --input " + data("ex4.json") + " --point 0,0";
  CHECK(run(analyze).out == run(analyze).out);

  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const std::string trace = "trace --input " + data("ex4.json") + " --point 0,0 --dir 1 --offsets 1e-4 --out ";
  REQUIRE(run(trace + (a / "f.csv").string()).code == 0);
  REQUIRE(run(trace + (b / "f.csv").string()).code == 0);
  CHECK(slurp(a / "f_0.csv") == slurp(b / "f_0.csv"));

  const Run v1 = run("verify --example ex4"), v2 = run("verify --example ex4");
  CHECK(v1.code == 0);
  CHECK(v1.out == v2.out);
}
