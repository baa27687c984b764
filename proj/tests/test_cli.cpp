#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "bl/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int exit_code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = bl::run_cli(args, out, err);
  return Run{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("spectrum emits the golden exact rows for (2,2,2)") {
  const auto r = run({"spectrum", "--n1", "2", "--n2", "2", "--nw", "2", "--backend", "exact"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "k,lambda\n0,1\n1,0\n2,-1/2\n");
}

TEST_CASE("stationary and eigvec tables in exact mode") {
  const auto pi = run({"stationary", "--n1", "2", "--n2", "2", "--nw", "2", "--backend", "exact"});
  CHECK(pi.out == "i,pi\n0,1/6\n1,2/3\n2,1/6\n");

  const auto vec = run({"eigvec", "--n1", "2", "--n2", "2", "--nw", "2", "--k", "1", "--form",
                        "hypergeometric", "--backend", "exact"});
  CHECK(vec.out == "i,value\n0,1\n1,0\n2,-1\n");

  const auto b = run({"eigvec", "--n1", "2", "--n2", "2", "--nw", "2", "--k", "1", "--form", "b",
                      "--backend", "exact"});
  CHECK(b.out == "i,value\n0,0\n1,1\n2,1/2\n");

  const auto pascal = run({"eigvec", "--n1", "2", "--n2", "2", "--nw", "2", "--k", "1", "--form",
                           "pascal", "--backend", "exact"});
  CHECK(pascal.out == "i,value\n0,-1/2\n1,0\n2,1/2\n");
}

TEST_CASE("exit codes: usage errors are 2, domain errors are 1") {
  CHECK(run({"spectrum", "--n1", "2"}).exit_code == 2);          // missing required flags
  CHECK(run({"nonsense"}).exit_code == 2);                       // unknown subcommand
  CHECK(run({}).exit_code == 2);                                 // no subcommand
  const auto bad = run({"spectrum", "--n1", "2", "--n2", "2", "--nw", "5"});
  CHECK(bad.exit_code == 1);                                     // impossible color count
  CHECK(bad.err.find("error") != std::string::npos);
  CHECK(bad.out.empty());
}

TEST_CASE("non-canonical parameters are relabeled with a diagnostic note") {
  // (4,5,6) color-swaps to (4,5,3): four states, eigen-indices 0..3
  const auto r = run({"spectrum", "--n1", "4", "--n2", "5", "--nw", "6", "--backend", "exact"});
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("canonical") != std::string::npos);
  CHECK(r.out.find("\n3,") != std::string::npos);

  const auto impossible = run({"spectrum", "--n1", "2", "--n2", "5", "--nw", "3"});
  CHECK(impossible.exit_code == 1);
}

TEST_CASE("tv-curve: row count, float default backend, tv(0) = 1 - pi_j") {
  const auto r = run({"tv-curve", "--n1", "5", "--n2", "5", "--nw", "5", "--start", "0",
                      "--m-max", "10"});
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m,tv");
  int rows = 0;
  std::string first_row;
  while (std::getline(lines, line)) {
    if (rows == 0) first_row = line;
    ++rows;
  }
  CHECK(rows == 11);
  // pi_0 = C(5,0) C(5,5) / C(10,5) = 1/252, so tv(0) = 251/252
  CHECK(first_row.substr(0, 2) == "0,");
  CHECK(std::abs(std::stod(first_row.substr(2)) - 251.0 / 252.0) < 1e-12);
}

TEST_CASE("tv-curve at n = 200 over 1001 steps enters [0, 0.01] and stays") {
  const auto r = run({"tv-curve", "--n1", "100", "--n2", "100", "--nw", "100", "--start", "0",
                      "--m-max", "1000"});
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> tv;
  while (std::getline(lines, line)) tv.push_back(std::stod(line.substr(line.find(',') + 1)));
  REQUIRE(tv.size() == 1001);
  CHECK(std::abs(tv[0] - 1.0) < 1e-12);  // 1 - pi_0, and pi_0 ~ 1e-59
  bool entered = false;
  bool stayed = true;
  for (const double value : tv) {
    if (value <= 0.01) entered = true;
    if (entered && value > 0.01) stayed = false;
  }
  CHECK(entered);
  CHECK(stayed);
}

TEST_CASE("exact tv-curve obeys the cost guard") {
  const auto rejected = run({"tv-curve", "--n1", "100", "--n2", "100", "--nw", "100", "--m-max",
                             "1000", "--backend", "exact"});
  CHECK(rejected.exit_code == 1);
  CHECK(rejected.err.find("exceeds limit") != std::string::npos);

  const auto allowed = run({"tv-curve", "--n1", "5", "--n2", "5", "--nw", "5", "--m-max", "4",
                            "--backend", "exact"});
  CHECK(allowed.exit_code == 0);
  CHECK(allowed.out.find("251/252") != std::string::npos);
}

TEST_CASE("json envelope carries command, params, and typed data") {
  const auto r = run({"spectrum", "--n1", "2", "--n2", "2", "--nw", "2", "--backend", "exact",
                      "--format", "json"});
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["command"] == "spectrum");
  CHECK(doc["params"]["n1"] == 2);
  CHECK(doc["params"]["backend"] == "exact");
  REQUIRE(doc["data"].is_array());
  CHECK(doc["data"][2]["lambda"] == "-1/2");  // exact values serialize as strings

  const auto f = run({"spectrum", "--n1", "2", "--n2", "2", "--nw", "2", "--backend", "float",
                      "--format", "json"});
  const json fdoc = json::parse(f.out);
  CHECK(fdoc["data"][2]["lambda"].is_number());
  CHECK(fdoc["data"][2]["lambda"].get<double>() == -0.5);
}

TEST_CASE("emitted documents match the shipped schema's required shape") {
  std::ifstream schema_file(std::string(BL_SOURCE_DIR) + "/schemas/output.schema.json");
  REQUIRE(schema_file.good());
  const json schema = json::parse(schema_file);
  const auto r = run({"power", "--n1", "3", "--n2", "3", "--nw", "2", "--m", "3", "--format",
                      "json"});
  const json doc = json::parse(r.out);
  for (const auto& key : schema["required"]) CHECK(doc.contains(key.get<std::string>()));
  for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
    if (doc.contains(it.key()) && it.value().contains("required"))
      for (const auto& key : it.value()["required"])
        CHECK(doc[it.key()].contains(key.get<std::string>()));
}

TEST_CASE("power emits row-major triplets whose values match spectral rows") {
  const auto r = run({"power", "--n1", "2", "--n2", "2", "--nw", "2", "--m", "2", "--backend",
                      "exact"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("i,j,value\n0,0,1/4\n0,1,1/8\n") == 0);
}

TEST_CASE("bounds emits a c-grid with theorem step counts") {
  const auto r = run({"bounds", "--n1", "100", "--n2", "100", "--nw", "100", "--kind", "upper"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("c,m,bound\n0,248,1\n") == 0);

  const auto low = run({"bounds", "--n1", "100", "--n2", "100", "--nw", "100", "--kind", "lower",
                        "--c", "-1"});
  CHECK(low.out.find("-1,232,") != std::string::npos);

  const auto unbalanced = run({"bounds", "--n1", "3", "--n2", "4", "--nw", "2"});
  CHECK(unbalanced.exit_code == 1);
}

TEST_CASE("verify prints one line per invariant and exits zero") {
  const auto r = run({"verify", "--max-n", "5"});
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(line.rfind("PASS ", 0) == 0);
    ++count;
  }
  CHECK(count >= 20);

  // the default enumerates every canonical model with n <= 12
  const auto full = run({"verify"});
  CHECK(full.exit_code == 0);
  CHECK(full.out.find("(161 cases)") != std::string::npos);
  CHECK(full.out.find("FAIL") == std::string::npos);
}

TEST_CASE("simulate emits deterministic JSON per seed") {
  const std::vector<std::string> args{"simulate", "--n1", "4", "--n2", "4", "--nw", "4",
                                      "--start", "0", "--m", "12", "--walkers", "5000",
                                      "--seed", "77"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out);
  CHECK(doc["command"] == "simulate");
  CHECK(doc["data"]["walkers"] == 5000);
  CHECK(doc["data"]["tv_vs_exact"].is_number());
  CHECK(doc["data"]["tv_vs_exact"].get<double>() < 0.2);
}

TEST_CASE("identical invocations are byte-identical") {
  const std::vector<std::string> args{"tv-curve", "--n1", "10", "--n2", "10", "--nw", "10",
                                      "--m-max", "50"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("eigvec with an out-of-range index is a domain error") {
  const auto r = run({"eigvec", "--n1", "2", "--n2", "2", "--nw", "2", "--k", "7"});
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("out of range") != std::string::npos);
}

TEST_CASE("BL_BACKEND selects the default backend; flags override it") {
  setenv("BL_BACKEND", "exact", 1);
  const auto env_exact = run({"spectrum", "--n1", "2", "--n2", "2", "--nw", "2"});
  CHECK(env_exact.out == "k,lambda\n0,1\n1,0\n2,-1/2\n");
  const auto flag_wins = run({"spectrum", "--n1", "2", "--n2", "2", "--nw", "2", "--backend",
                              "float"});
  CHECK(flag_wins.out == "k,lambda\n0,1\n1,0\n2,-0.5\n");
  unsetenv("BL_BACKEND");
  const auto default_float = run({"spectrum", "--n1", "2", "--n2", "2", "--nw", "2"});
  CHECK(default_float.out == flag_wins.out);
}

TEST_CASE("--output writes the document to a file") {
  const std::string path = "build_test_cli_out.csv";
  const auto r = run({"stationary", "--n1", "2", "--n2", "2", "--nw", "2", "--backend", "exact",
                      "--output", path});
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == "i,pi\n0,1/6\n1,2/3\n2,1/6\n");
  std::remove(path.c_str());
}
