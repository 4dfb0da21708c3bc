// Exercises the installed command-line binary end to end. The binary path is
// passed as the first argument by ctest.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "scn/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_binary;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  fs::path log = fs::temp_directory_path() / "scn_cli_test_out.txt";
  std::string cmd = g_binary + " " + args + " > " + log.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  int code = 0;
#ifdef WIFEXITED
  code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#else
  code = rc;
#endif
  return {code, ss.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("scn_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("filter extracts the toy interval") {
  TempDir d;
  write(d.path / "tx.csv",
        "supplier_id,buyer_id,month,amount\n"
        "1,2,2017-01,10\n"
        "1,2,2017-02,10\n"
        "1,2,2017-03,10\n");
  auto r = run("--out " + (d.path / "out").string() + " filter " +
               (d.path / "tx.csv").string());
  CHECK(r.exit_code == 0);
  auto ivs = scn::read_intervals_csv_file((d.path / "out/intervals.csv").string());
  REQUIRE(ivs.size() == 1);
  CHECK(ivs[0].entry_month == scn::parse_year_month("2017-01"));
  CHECK(ivs[0].exit_month == scn::parse_year_month("2017-04"));
  CHECK(fs::exists(d.path / "out/timeline.csv"));
  CHECK(fs::exists(d.path / "out/manifest.json"));
}

TEST_CASE("bad month exits nonzero and cites the line") {
  TempDir d;
  write(d.path / "tx.csv",
        "supplier_id,buyer_id,month,amount\n"
        "1,2,2017-01,10\n"
        "1,2,2017-13,10\n");
  auto r = run("--out " + (d.path / "out").string() + " filter " +
               (d.path / "tx.csv").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("lenient mode skips the bad row") {
  TempDir d;
  write(d.path / "tx.csv",
        "supplier_id,buyer_id,month,amount\n"
        "1,2,2017-01,10\n"
        "1,2,2017-13,10\n"
        "1,2,2017-02,10\n"
        "1,2,2017-03,10\n");
  auto r = run("--out " + (d.path / "out").string() + " filter --lenient " +
               (d.path / "tx.csv").string());
  CHECK(r.exit_code == 0);
  auto ivs = scn::read_intervals_csv_file((d.path / "out/intervals.csv").string());
  CHECK(ivs.size() == 1);
}

TEST_CASE("calibrate with too little data names the parameter") {
  TempDir d;
  write(d.path / "iv.csv",
        "supplier_id,buyer_id,entry_month,exit_month\n"
        "1,2,0,4\n");
  auto r = run("--out " + (d.path / "out").string() + " calibrate " +
               (d.path / "iv.csv").string());
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("n_entry_mean") != std::string::npos);
}

TEST_CASE("roundtrip subcommand reports an exact reconstruction") {
  TempDir d;
  auto r = run("--seed 5 --out " + (d.path / "out").string() +
               " roundtrip --links 2000 --months 48 --noise 100");
  CHECK(r.exit_code == 0);
  auto j = slurp(d.path / "out/roundtrip.json");
  CHECK(j.find("\"exact\": true") != std::string::npos);
}

TEST_CASE("stats and esri run on a tiny snapshot") {
  TempDir d;
  write(d.path / "firms.csv", "firm_id,sector\n0,0\n1,0\n2,0\n");
  write(d.path / "edges.csv", "supplier_id,buyer_id\n0,1\n1,2\n2,0\n");
  auto rs = run("--out " + (d.path / "s").string() + " stats " +
                (d.path / "firms.csv").string() + " " +
                (d.path / "edges.csv").string() + " --sectors 1");
  CHECK(rs.exit_code == 0);
  auto stats = slurp(d.path / "s/stats.json");
  CHECK(stats.find("\"mean_degree\": 2.0") != std::string::npos);

  auto re = run("--out " + (d.path / "e").string() + " esri " +
                (d.path / "firms.csv").string() + " " +
                (d.path / "edges.csv").string() + " --sectors 1");
  CHECK(re.exit_code == 0);
  CHECK(fs::exists(d.path / "e/esri.csv"));
}

TEST_CASE("missing input file is an input error") {
  TempDir d;
  auto r = run("--out " + (d.path / "out").string() + " filter /nonexistent.csv");
  CHECK(r.exit_code == 2);
}

TEST_CASE("pipeline outputs are byte-identical across reruns") {
  TempDir d;
  auto r1 = run("--seed 9 --out " + (d.path / "a").string() +
                " roundtrip --links 500 --months 36");
  auto r2 = run("--seed 9 --out " + (d.path / "b").string() +
                " roundtrip --links 500 --months 36");
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(d.path / "a/roundtrip.json") == slurp(d.path / "b/roundtrip.json"));
}

int main(int argc, char** argv) {
  if (argc > 1) {
    g_binary = argv[1];
  } else {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 1;
  }
  doctest::Context ctx;
  return ctx.run();
}
