#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;
namespace cli = linechase::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "line-chase");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "linechase_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string last_cell(const std::string& csv) {
  std::string line, last;
  std::istringstream in(csv);
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return last.substr(last.rfind(',') + 1);
}

}  // namespace

TEST_CASE("run writes the path and total cost") {
  const fs::path inst = write_file("two.json", R"({"dim": 2, "start": [1, 0.70710678118654752],
    "lines": [{"point": [0, 0], "dir": [1, 0]}, {"point": [0, 0], "dir": [1, 1]}]})");
  const fs::path csv = scratch("two.csv");
  const Result r = invoke({"run", "--instance", inst.string(), "--policy", "drift", "--out",
                           csv.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(std::stod(last_cell(read_file(csv))) == doctest::Approx(1.4724736460).epsilon(1e-9));
}

TEST_CASE("run on an empty request list") {
  const fs::path inst = write_file("empty.json", R"({"dim": 2, "start": [3, 4], "lines": []})");
  const Result r = invoke({"run", "--instance", inst.string(), "--out", "-"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("step,x0,x1,step_cost,cumulative_cost\n0,3,4,0,0\n") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  const fs::path inst = write_file("one.json", R"({"dim": 2, "start": [0, 1],
    "lines": [{"point": [0, 0], "dir": [1, 0]}]})");
  const Result unknown = invoke({"run", "--instance", inst.string(), "--policy", "nope"});
  CHECK(unknown.code == cli::kExitUsage);
  CHECK(unknown.err.find("extended-drift") != std::string::npos);

  const fs::path bad = write_file("bad.json", R"({"dim": 2, "start": [0, 1],
    "lines": [{"point": [0, 0], "dir": [0, 0]}]})");
  const Result parse = invoke({"run", "--instance", bad.string()});
  CHECK(parse.code == cli::kExitUsage);
  CHECK(parse.err.find("lines[0].dir") != std::string::npos);

  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({"adversary", "--kind", "nonsense"}).code == cli::kExitUsage);
  CHECK(invoke({"adversary", "--kind", "memoryless-main", "--a", "-1"}).code == cli::kExitUsage);
  CHECK(invoke({"sweep", "--beta-grid", "0.5,-1"}).code == cli::kExitUsage);
  CHECK(invoke({"verify", "--suite", "rts", "--dim", "1"}).code == cli::kExitUsage);
}

TEST_CASE("opt reports the optimum") {
  const fs::path inst = write_file("opt.json", R"({"dim": 2, "start": [0, 0],
    "lines": [{"point": [0, 1], "dir": [1, 0]}]})");
  const fs::path csv = scratch("opt.csv");
  const Result r = invoke({"opt", "--instance", inst.string(), "--out", csv.string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("opt_cost=1 ") != std::string::npos);
  CHECK(std::stod(last_cell(read_file(csv))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("adversary summaries") {
  const Result arb = invoke({"adversary", "--kind", "arbitrary", "--policy", "drift"});
  CHECK(arb.code == cli::kExitOk);
  CHECK(arb.out.find("force-A") != std::string::npos);

  const Result rot = invoke({"adversary", "--kind", "memoryless-rotation", "--policy",
                             "beta:const:0.0", "--a", "0.01", "--steps", "10000"});
  CHECK(rot.code == cli::kExitOk);
  CHECK(rot.out.find("memoryless-rotation") != std::string::npos);
}

TEST_CASE("verify suites") {
  const Result consts = invoke({"verify", "--suite", "section5-constants"});
  CHECK(consts.code == cli::kExitOk);
  CHECK(consts.out.find("1.23679") != std::string::npos);

  CHECK(invoke({"verify", "--suite", "potential", "--n", "20000"}).code == cli::kExitOk);
  const Result greedy = invoke({"verify", "--suite", "potential", "--n", "20000", "--policy",
                                "greedy"});
  CHECK(greedy.code == cli::kExitCheckFailed);
  CHECK(greedy.out.find("offending") != std::string::npos);

  CHECK(invoke({"verify", "--suite", "rts", "--n", "20"}).code == cli::kExitOk);
  CHECK(invoke({"verify", "--suite", "ratio-audit", "--n", "5"}).code == cli::kExitOk);
  CHECK(invoke({"verify", "--suite", "ratio-audit", "--n", "3", "--dim", "3"}).code == cli::kExitOk);
}

TEST_CASE("sweep rows") {
  const Result r = invoke({"sweep", "--beta-grid", "0.3,0.70710678118654752", "--a", "0.01",
                           "--steps", "10000", "--out", "-"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("beta,simulated_ratio,theoretical_ratio,gap\n") != std::string::npos);
  CHECK(r.out.find(",3,") != std::string::npos);
}

TEST_CASE("identical commands give identical csv") {
  const fs::path a = scratch("audit_a.csv");
  const fs::path b = scratch("audit_b.csv");
  CHECK(invoke({"verify", "--suite", "ratio-audit", "--n", "4", "--seed", "9", "--out",
                a.string()}).code == cli::kExitOk);
  CHECK(invoke({"verify", "--suite", "ratio-audit", "--n", "4", "--seed", "9", "--out",
                b.string()}).code == cli::kExitOk);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a).rfind("instance_id,policy,alg_cost,opt_cost,ratio,notes\n", 0) == 0);
}
