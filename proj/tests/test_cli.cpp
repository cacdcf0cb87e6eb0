#include "doctest.h"

#include "multiflow/io.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>

namespace fs = std::filesystem;
using multiflow::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string binary() {
  const char* p = std::getenv("MULTIFLOW_CLI");
  REQUIRE_MESSAGE(p != nullptr, "MULTIFLOW_CLI is not set");
  return p;
}

Run run(const std::string& args) {
  Run r;
  std::string cmd = binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("multiflow_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Hubs s, t; three unit spokes; hub demand and a triangle of spoke demands.
const char* kOddK6 = R"({
  "nodes": ["s", "t", "a", "b", "c"],
  "supply": [["s","a","1"],["a","t","1"],["s","b","1"],["b","t","1"],["s","c","1"],["c","t","1"]],
  "demand": [["s","t","1"],["a","b","1"],["b","c","1"],["c","a","1"]]
})";

}  // namespace

TEST_CASE("check-cut on the odd K6 instance holds with a tight cut") {
  auto r = run("check-cut " + write("oddk6.json", kOddK6));
  CHECK(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j.at("holds") == true);
  CHECK(j.at("min_surplus") == "0");
}

TEST_CASE("k2m routing of the odd K6 instance reports a witness") {
  auto r = run("route --mode k2m " + write("oddk6.json", kOddK6));
  CHECK(r.code == 1);
  auto j = Json::parse(r.out);
  CHECK(j.at("witness").at("p") == 3);
  CHECK(j.at("witness").at("assignment").size() == 3);
}

TEST_CASE("lower-bound table") {
  auto r = run("gap lower-bound --m 4 --k 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("13/9") != std::string::npos);
  CHECK(r.out.find("NO") == std::string::npos);
  auto three = run("gap lower-bound --m 4 --k 3 --verify lp");
  CHECK(three.code == 0);
  CHECK(three.out.find("40/27") != std::string::npos);
}

TEST_CASE("sp5 routing verifies at congestion 5") {
  for (int seed : {0, 1, 2}) {
    std::string inst = (scratch() / ("sp" + std::to_string(seed) + ".json")).string();
    std::string out = (scratch() / ("sp" + std::to_string(seed) + "_route.json")).string();
    REQUIRE(run("generate --family sp --seed " + std::to_string(seed) + " --out " + inst).code == 0);
    REQUIRE(run("route --mode sp5 " + inst + " --out " + out).code == 0);
    CHECK(run("verify-routing " + inst + " " + out + " --alpha 5").code == 0);
  }
}

TEST_CASE("verify-routing rejects an overloaded routing") {
  std::string inst = write("c4.json", R"({"nodes":["a","b","c","d"],
    "supply":[["a","b","1"],["b","c","1"],["c","d","1"],["d","a","1"]],
    "demand":[["a","c","2"]]})");
  std::string routing = write("c4_route.json", R"({"integral":true,"routes":[
    {"demand":["a","c"],"flows":[{"path":["a","b","c"],"amount":"2"}]}]})");
  auto bad = run("verify-routing " + inst + " " + routing);
  CHECK(bad.code == 1);
  CHECK(Json::parse(bad.out).contains("reason"));
  CHECK(run("verify-routing " + inst + " " + routing + " --alpha 2").code == 0);
}

TEST_CASE("json round trip through the generator") {
  std::string a = (scratch() / "rt_a.json").string();
  REQUIRE(run("generate --family ring --seed 4 --out " + a).code == 0);
  auto j = Json::parse(slurp(a));
  auto back = multiflow::instance_to_json(multiflow::instance_from_json(j));
  CHECK(back == j);
}

TEST_CASE("dot output lists every edge once") {
  std::string inst = write("dot.json", R"({"nodes":["a","b","c"],
    "supply":[["a","b","2"],["b","c","1"],["a","c","1"]],"demand":[["a","c","1"],["a","b","1"]]})");
  auto r = run("export-dot " + inst);
  REQUIRE(r.code == 0);
  auto count = [&](const std::string& pattern) {
    std::regex re(pattern);
    return std::distance(std::sregex_iterator(r.out.begin(), r.out.end(), re), std::sregex_iterator());
  };
  CHECK(count("style=solid") == 3);
  CHECK(count("style=dashed") == 2);
  CHECK(count("\"a\" -- \"b\"[^\\n]*solid") == 1);
  CHECK(count("\"a\" -- \"b\"[^\\n]*dashed") == 1);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("route --mode bogus " + write("oddk6.json", kOddK6)).code == 2);
  CHECK(run("check-cut " + (scratch() / "missing.json").string()).code == 2);
  CHECK(run("gap lower-bound --m notanumber").code == 2);
}

TEST_CASE("library failures exit with 1 and a machine-readable reason") {
  // Not series-parallel: K4.
  std::string k4 = write("k4.json", R"({"nodes":["a","b","c","d"],
    "supply":[["a","b","1"],["a","c","1"],["a","d","1"],["b","c","1"],["b","d","1"],["c","d","1"]],
    "demand":[["a","b","1"]]})");
  auto r = run("route --mode sp5 " + k4);
  CHECK(r.code == 1);
  auto j = Json::parse(r.out);
  CHECK(j.contains("error"));
  CHECK(j.contains("detail"));
}

TEST_CASE("outputs are byte-identical across runs") {
  for (std::string cmd : {"generate --family sp --seed 7", "generate --family planar-outer --seed 2",
                          "generate --family k2m-bipartite --seed 9"}) {
    auto first = run(cmd), second = run(cmd);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());
  }
  std::string inst = (scratch() / "det.json").string();
  REQUIRE(run("generate --family sp --seed 5 --out " + inst).code == 0);
  CHECK(run("route --mode sp5 " + inst).out == run("route --mode sp5 " + inst).out);
  CHECK(run("flow min-congestion " + inst).out == run("flow min-congestion " + inst).out);
  // Different seeds give different instances.
  CHECK(run("generate --family sp --seed 7").out != run("generate --family sp --seed 8").out);
}

TEST_CASE("selftest passes") {
  auto r = run("selftest");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
