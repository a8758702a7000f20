#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pullsim/cli.hpp"
#include "pullsim/io.hpp"

using namespace pullsim;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pullsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pullsim_test_cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("subseq prints the known member") {
  const Result r = cli({"subseq", "--x", "0.5", "--from", "23", "--to", "23"});
  CHECK(r.code == 0);
  CHECK(r.out.find("867611") != std::string::npos);
}

TEST_CASE("sim output is a function of the seed") {
  const fs::path a = scratch("a.csv"), b = scratch("b.csv"), t = scratch("t.csv");
  CHECK(cli({"sim", "--n", "1000", "--runs", "500", "--seed", "7", "--out", a.string()}).code == 0);
  CHECK(cli({"sim", "--n", "1000", "--runs", "500", "--seed", "7", "--out", b.string(),
             "--trajectories", t.string()})
            .code == 0);
  CHECK(slurp(a) == slurp(b));
  const CsvTable table = read_csv(a);
  CHECK(table.rows.size() == 500);
  CHECK(table.metadata["seed"] == 7);
  const auto meta = nlohmann::json::parse(slurp(a.string() + ".json"));
  CHECK(meta["master_seed"] == 7);
  CHECK(meta.contains("timing_seconds"));
  CHECK(read_csv(t).columns == std::vector<std::string>{"run_index", "round", "informed"});
}

TEST_CASE("verify tv succeeds and prints JSON lines") {
  const Result r = cli({"verify", "tv", "--n", "1024", "--tmax", "3"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["passed"] == true);
    ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(cli({"sim", "--n", "10", "--out", scratch("x.csv").string(), "--bogus"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"sim", "--n", "10", "--denominator", "2n", "--out", scratch("x.csv").string()}).code == 1);
  CHECK(cli({"verify", "tv", "--n", "100000"}).code == 1);
  CHECK(cli({"subseq", "--x", "1.5"}).code == 1);
}

TEST_CASE("help lists the flags") {
  const Result r = cli({"sim", "--help"});
  CHECK(r.code == 0);
  for (const char* flag : {"--n", "--runs", "--seed", "--denominator", "--out", "--trajectories"}) {
    CHECK(r.out.find(flag) != std::string::npos);
  }
  CHECK(cli({"--version"}).out.find(kVersion) != std::string::npos);
}

TEST_CASE("limit, density, moments, charfn and plot") {
  const fs::path bin = scratch("x.bin");
  REQUIRE(cli({"limit", "--tstar", "12", "--samples", "2000", "--seed", "3", "--out", bin.string()})
              .code == 0);
  CHECK(fs::file_size(bin) == 2000 * 8);
  CHECK(fs::exists(bin.string() + ".json"));

  const fs::path dens = scratch("d.csv");
  REQUIRE(cli({"density", "--input", bin.string(), "--points", "64", "--out", dens.string()}).code == 0);
  CHECK(read_csv(dens).rows.size() == 64);

  const fs::path mom = scratch("m.csv");
  REQUIRE(cli({"moments", "--input", bin.string(), "--grid", "0:1:0.25", "--out", mom.string()}).code ==
          0);
  CHECK(read_csv(mom).numeric_column("x_shift") == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});

  const fs::path cf = scratch("c.csv");
  CHECK(cli({"charfn", "--grid", "0:2:1", "--t", "1,4", "--route", "F", "--out", cf.string()}).code == 0);
  CHECK(read_csv(cf).rows.size() == 6);

  const fs::path s1 = scratch("p1.svg"), s2 = scratch("p2.svg");
  CHECK(cli({"plot", "--kind", "density", "--input", dens.string(), "--out", s1.string()}).code == 0);
  CHECK(cli({"plot", "--kind", "density", "--input", dens.string(), "--out", s2.string()}).code == 0);
  CHECK(slurp(s1) == slurp(s2));
  // a moments plot of a density table is a schema mismatch
  CHECK(cli({"plot", "--kind", "moments", "--input", dens.string(), "--out", s2.string()}).code == 2);
  CHECK(cli({"plot", "--kind", "density", "--input", scratch("nope.csv").string(), "--out",
             s2.string()})
            .code == 2);
}

TEST_CASE("plot of a single row") {
  const fs::path in = scratch("one.csv"), svg = scratch("one.svg");
  {
    CsvWriter w(in, make_metadata("density", {}), {"x", "density"});
    w.row({"0.5", "0.3"});
  }
  CHECK(cli({"plot", "--kind", "density", "--input", in.string(), "--out", svg.string()}).code == 0);
  CHECK(slurp(svg).find("</svg>") != std::string::npos);
}

TEST_CASE("a falsified statement exits with 3") {
  const Result r = cli({"verify", "theorem1", "--n", "1000", "--runs", "200", "--seed", "1",
                        "--tstar", "12", "--samples", "500", "--max-distance", "0"});
  CHECK(r.code == 3);
  CHECK(r.out.find("\"passed\":false") != std::string::npos);
}

#ifdef PULLSIM_CLI_PATH
TEST_CASE("the installed binary maps exit codes") {
  const std::string bin = PULLSIM_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status(bin + " subseq --x 0 --from 10 --to 12") == 0);
  CHECK(status(bin + " frobnicate") == 1);
}
#endif
