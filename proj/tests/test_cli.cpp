#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "otns/cli.hpp"

namespace {

struct CliResult {
  int code = 0;
  std::string out, err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult res;
  res.code = otns::cli::run(args, out, err);
  res.out = out.str();
  res.err = err.str();
  return res;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

// comment lines, then a header row, then data rows
struct Csv {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      csv.comments.push_back(line);
    } else if (!have_header) {
      csv.header = split(line, ',');
      have_header = true;
    } else {
      csv.rows.push_back(split(line, ','));
    }
  }
  return csv;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("threshold command prints the frozen root", "[cli]") {
  CliResult r = run_cli({"threshold"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.comments.size() == 1);
  REQUIRE(csv.comments[0] == "# otns threshold | seed=0 version=0.1.0");
  REQUIRE(csv.header == std::vector<std::string>{"r_star", "noise_fraction", "ec_leak_rate"});
  REQUIRE(csv.rows.size() == 1);
  REQUIRE(csv.rows[0][0] == "0.779944271");  // nine significant digits
  REQUIRE(csv.rows[0][1] == "0.220055729");
  REQUIRE(r.out.find('\r') == std::string::npos);
}

TEST_CASE("bounds curves and their zero-noise values", "[cli]") {
  CliResult r = run_cli({"bounds", "--kinds", "erasure", "--rmin", "0", "--rmax", "1", "--step",
                         "0.5"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.header == std::vector<std::string>{"x", "bound_erasure"});
  REQUIRE(csv.rows.size() == 3);
  REQUIRE(csv.rows[0][1] == "1");
  REQUIRE(csv.rows[1][1] == "0.5");
  REQUIRE(csv.rows[2][1] == "0");

  CliResult trio = run_cli({"bounds", "--kinds", "bounded_storage,strong_converse,collision",
                            "--rmin", "0", "--rmax", "0", "--step", "1"});
  Csv tcsv = parse_csv(trio.out);
  REQUIRE(tcsv.rows.size() == 1);
  REQUIRE(std::stod(tcsv.rows[0][1]) == 0.5);
  REQUIRE(std::abs(std::stod(tcsv.rows[0][2]) - 0.5) < 1e-6);
  REQUIRE(std::stod(tcsv.rows[0][3]) == 1.0);
}

TEST_CASE("correlated bounds emit one column per burst length", "[cli]") {
  CliResult r = run_cli({"bounds", "--kinds", "correlated_collision", "--m", "1,2,5", "--rmin",
                         "0.3", "--rmax", "0.3", "--step", "1"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.header ==
          std::vector<std::string>{"x", "bound_correlated_collision_m1",
                                   "bound_correlated_collision_m2",
                                   "bound_correlated_collision_m5"});
  double v1 = std::stod(csv.rows[0][1]);
  double v2 = std::stod(csv.rows[0][2]);
  double v5 = std::stod(csv.rows[0][3]);
  REQUIRE(v1 >= v2);
  REQUIRE(v2 >= v5);
}

TEST_CASE("unknown bound kind exits with validation status", "[cli]") {
  CliResult r = run_cli({"bounds", "--kinds", "no_such_kind"});
  REQUIRE(r.code == 2);
  REQUIRE(r.err.find("unknown bound kind") != std::string::npos);

  CliResult sub = run_cli({"frobnicate"});
  REQUIRE(sub.code == 2);
}

TEST_CASE("seed resolution from flag and environment", "[cli]") {
  CliResult flag = run_cli({"threshold", "--seed", "9"});
  REQUIRE(flag.out.find("seed=9 ") != std::string::npos);

  ::setenv("OTNS_SEED", "314", 1);
  CliResult env = run_cli({"threshold"});
  ::unsetenv("OTNS_SEED");
  REQUIRE(env.out.find("seed=314 ") != std::string::npos);
}

TEST_CASE("identical command lines reproduce identical bytes", "[cli]") {
  std::vector<std::string> cmd{"simulate", "--sessions", "5",      "--n-prime", "1000",
                               "--eta",    "0.8",        "--r1",   "0.95",      "--r-mem",
                               "0",        "--eps-h",    "0.001",  "--seed",    "7"};
  CliResult a = run_cli(cmd);
  CliResult b = run_cli(cmd);
  REQUIRE(a.code == 0);
  REQUIRE(a.out == b.out);

  CliResult c = run_cli({"bounds", "--rmin", "0", "--rmax", "1", "--step", "0.01"});
  CliResult d = run_cli({"bounds", "--rmin", "0", "--rmax", "1", "--step", "0.01"});
  REQUIRE(c.out == d.out);
  REQUIRE(parse_csv(c.out).rows.size() == 101);
}

TEST_CASE("simulate summary for a noiseless channel", "[cli]") {
  CliResult r = run_cli({"simulate", "--sessions", "3", "--n-prime", "1000", "--r-mem", "0",
                         "--eps-h", "0.001"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 1);
  auto cell = [&](const char* name) {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
      if (csv.header[i] == name) return csv.rows[0][i];
    FAIL("missing column");
    return std::string();
  };
  REQUIRE(cell("sessions") == "3");
  REQUIRE(cell("aborted") == "0");
  REQUIRE(cell("ec_failures") == "0");
  REQUIRE(cell("hash_mismatches") == "0");
  REQUIRE(cell("matched_error_rate") == "0");
  REQUIRE(std::stod(cell("mean_ell")) > 0.0);
}

TEST_CASE("simulate writes transcript files deterministically", "[cli]") {
  std::string path = "cli_test_transcripts.json";
  std::vector<std::string> cmd{"simulate", "--sessions", "2",    "--n-prime",     "800",
                               "--eta",    "0.9",        "--r1", "0.9",           "--r-mem",
                               "0",        "--eps-h",    "0.01", "--transcripts", path,
                               "--seed",   "21"};
  CliResult a = run_cli(cmd);
  REQUIRE(a.code == 0);
  std::string first = slurp(path);
  CliResult b = run_cli(cmd);
  std::string second = slurp(path);
  REQUIRE(first == second);
  nlohmann::json arr = nlohmann::json::parse(first);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 2);
  REQUIRE(arr[0].contains("S_tilde_B"));
  REQUIRE(arr[0]["meta"]["seed"] == 21);
  std::remove(path.c_str());
}

TEST_CASE("simulate rejects an oversized fixed output length", "[cli]") {
  CliResult r = run_cli({"simulate", "--sessions", "1", "--n-prime", "1000", "--ell", "100000"});
  REQUIRE(r.code == 2);
  REQUIRE_FALSE(r.err.empty());

  CliResult bad = run_cli({"simulate", "--ell", "banana"});
  REQUIRE(bad.code == 2);
}

TEST_CASE("loss-dominated simulation exits with the abort status", "[cli]") {
  CliResult r = run_cli({"simulate", "--sessions", "9", "--n-prime", "2000", "--eta", "0.9",
                         "--eta-actual", "0.3", "--seed", "1"});
  REQUIRE(r.code == 3);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 1);
}

TEST_CASE("composite noise flags override raw ones with a warning", "[cli]") {
  CliResult both = run_cli({"simulate", "--sessions", "2", "--n-prime", "1000", "--r-pre", "0.5",
                            "--r1", "0.9", "--r-mem", "0", "--eps-h", "0.01", "--seed", "4"});
  REQUIRE(both.code == 0);
  REQUIRE(both.err.find("warning") != std::string::npos);

  CliResult only = run_cli({"simulate", "--sessions", "2", "--n-prime", "1000", "--r1", "0.9",
                            "--r-mem", "0", "--eps-h", "0.01", "--seed", "4"});
  REQUIRE(only.err.empty());
  // same data row either way; only the recorded command differs
  REQUIRE(parse_csv(both.out).rows == parse_csv(only.out).rows);

  CliResult rdis = run_cli({"simulate", "--sessions", "1", "--n-prime", "1000", "--r-pre", "0.5",
                            "--r-dis", "0.8", "--eps-h", "0.01"});
  REQUIRE(rdis.code == 2);  // r_mem would exceed 1
}

TEST_CASE("attack sweep emits empirical and analytic columns", "[cli]") {
  CliResult r = run_cli({"attack", "--strategy", "erasure_flag_memory", "--memory-r", "0.6",
                         "--trials", "4000", "--target-bits", "16", "--n-prime", "200", "--seed",
                         "17"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.header.front() == "x");
  REQUIRE(csv.rows.size() == 1);
  auto cell = [&](const char* name) {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
      if (csv.header[i] == name) return csv.rows[0][i];
    FAIL("missing column");
    return std::string();
  };
  double exp_ana = std::stod(cell("exponent_analytic"));
  double bound = std::stod(cell("exponent_bound"));
  REQUIRE(std::abs(exp_ana - std::log2(2.0 / 1.6)) < 1e-8);
  REQUIRE(std::abs(bound - 0.4) < 1e-8);
  REQUIRE(exp_ana <= bound);
  REQUIRE(std::stod(cell("exponent_ci_lo")) <= exp_ana);
  REQUIRE(exp_ana <= std::stod(cell("exponent_ci_hi")));

  CliResult perfect = run_cli({"attack", "--strategy", "store_all_depolarizing", "--memory-r",
                               "1", "--trials", "5", "--n-prime", "500"});
  Csv pcsv = parse_csv(perfect.out);
  REQUIRE(pcsv.rows[0][1] == "1");  // per-bit success column
}

TEST_CASE("attack sweep covers a memory grid", "[cli]") {
  CliResult r = run_cli({"attack", "--strategy", "store_all_depolarizing", "--sweep-min", "0",
                         "--sweep-max", "1", "--sweep-step", "0.25", "--trials", "10",
                         "--n-prime", "300", "--r-pre", "0.9"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    double x = std::stod(csv.rows[i][0]);
    double ana = std::stod(csv.rows[i][2]);
    REQUIRE(std::abs(ana - (1.0 + 0.9 * x) / 2.0) < 1e-8);
  }
}

TEST_CASE("boundary storage sweep approaches the threshold", "[cli]") {
  CliResult r = run_cli({"boundary", "--storage-sweep", "--grid", "11"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.header == std::vector<std::string>{"x", "boundary_r2"});
  REQUIRE(csv.rows.size() == 11);
  REQUIRE(csv.rows[0][1] == "0.779944271");
  REQUIRE(csv.rows[10][1] == "1");
}

TEST_CASE("rates sweep matches direct evaluation", "[cli]") {
  CliResult r = run_cli({"rates", "--scenario", "2", "--trusted", "1", "--bounds", "rational",
                         "--min", "0", "--max", "1", "--step", "0.25"});
  REQUIRE(r.code == 0);
  Csv csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 5);
  REQUIRE(csv.rows[3][1] == "0.25");  // min{1/2, 1/2 + (1/2 - 0.75)} - 0
  CliResult bad = run_cli({"rates", "--scenario", "7"});
  REQUIRE(bad.code == 2);
}

TEST_CASE("help exits cleanly", "[cli]") {
  CliResult r = run_cli({"--help"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("bounds") != std::string::npos);
}
