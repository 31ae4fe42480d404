#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const fs::path& path) {
  std::ifstream stream(path);
  std::ostringstream text;
  text << stream.rdbuf();
  return text.str();
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt";
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(RPSIM_BIN) + " " + args + " > " + out.string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(out);
  result.err = read_file(err);
  return result;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rpsim_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const fs::path& path) {
  std::ifstream stream(path);
  REQUIRE(stream.good());
  Csv csv;
  std::string line;
  REQUIRE(std::getline(stream, line));
  std::istringstream head(line);
  for (std::string cell; std::getline(head, cell, ',');) csv.header.push_back(cell);
  while (std::getline(stream, line)) {
    std::istringstream row(line);
    std::vector<double> values;
    for (std::string cell; std::getline(row, cell, ',');)
      values.push_back(std::stod(cell));
    csv.rows.push_back(values);
  }
  return csv;
}

}  // namespace

TEST_CASE("simulate fig2a writes the undamped beating curve") {
  const fs::path dir = fresh_dir("fig2a");
  const RunResult result = run_cli("simulate fig2a --out-dir " + dir.string(), dir);
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("fig2a_traditional.csv") != std::string::npos);
  CHECK(result.out.find("entanglement lifetime") != std::string::npos);
  CHECK(result.out.find("none") != std::string::npos);

  const Csv csv = parse_csv(dir / "fig2a_traditional.csv");
  REQUIRE(csv.header ==
          std::vector<std::string>{"t", "trace", "qs_norm", "concurrence_norm", "eof_norm"});
  REQUIRE(csv.rows.size() >= 500);
  CHECK(csv.rows.front()[0] == 0.0);
  for (const auto& row : csv.rows) {
    // time column is in units of 1/delta omega: <Q_S> = cos^2(t/2)
    CHECK(std::abs(row[2] - std::pow(std::cos(0.5 * row[0]), 2)) < 1e-6);
    CHECK(std::abs(row[4] - 1.0) < 1e-9);   // eof_norm stays 1
    CHECK(std::abs(row[1] - 1.0) < 1e-9);   // trace stays 1
  }
}

TEST_CASE("simulate output is byte-identical across runs") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  REQUIRE(run_cli("simulate fig2a --out-dir " + dir1.string(), dir1).exit_code == 0);
  REQUIRE(run_cli("simulate fig2a --out-dir " + dir2.string(), dir2).exit_code == 0);
  CHECK(read_file(dir1 / "fig2a_traditional.csv") ==
        read_file(dir2 / "fig2a_traditional.csv"));
}

TEST_CASE("RPSIM_OUTPUT_DIR is honored when --out-dir is absent") {
  const fs::path dir = fresh_dir("envdir");
  setenv("RPSIM_OUTPUT_DIR", dir.string().c_str(), 1);
  const RunResult result = run_cli("simulate fig2a", dir);
  unsetenv("RPSIM_OUTPUT_DIR");
  CHECK(result.exit_code == 0);
  CHECK(fs::exists(dir / "fig2a_traditional.csv"));
}

TEST_CASE("simulate fig2bc: three kinds; traditional matches the unitary run") {
  const fs::path dir = fresh_dir("fig2bc");
  REQUIRE(run_cli("simulate fig2a --out-dir " + dir.string(), dir).exit_code == 0);
  const RunResult result = run_cli("simulate fig2bc --out-dir " + dir.string(), dir);
  CHECK(result.exit_code == 0);
  for (const char* kind : {"traditional", "joneshore", "kominis"})
    CHECK(fs::exists(dir / (std::string("fig2bc_") + kind + ".csv")));

  const Csv unitary = parse_csv(dir / "fig2a_traditional.csv");
  const Csv trad = parse_csv(dir / "fig2bc_traditional.csv");
  REQUIRE(trad.rows.size() == unitary.rows.size());
  for (std::size_t i = 0; i < trad.rows.size(); ++i) {
    CHECK(std::abs(trad.rows[i][0] - unitary.rows[i][0]) < 1e-12);
    for (int col : {2, 3, 4})
      CHECK(std::abs(trad.rows[i][col] - unitary.rows[i][col]) < 1e-8);
  }

  for (const char* kind : {"joneshore", "kominis"}) {
    const Csv csv = parse_csv(dir / (std::string("fig2bc_") + kind + ".csv"));
    CHECK(csv.rows.back()[4] < 0.01);  // eof_norm decays to zero
  }
}

TEST_CASE("invalid configs exit with code 1 and a line-numbered message") {
  const fs::path dir = fresh_dir("badcfg");
  const fs::path cfg = dir / "bad.yaml";
  std::ofstream(cfg) << R"(name: bad
space:
  nuclear_spins: []
hamiltonian:
  omega1: 1.0
  omega2: 0.9
  hyperfine:
    - {electron: 1, nucleus: 0, a: 0.5}
reaction:
  theories: [traditional]
  k_s: 0.0
  k_t: 0.0
integration:
  t_max: 10.0
)";
  const RunResult result = run_cli("simulate " + cfg.string(), dir);
  CHECK(result.exit_code == 1);
  CHECK(result.err.find("line") != std::string::npos);

  const RunResult missing = run_cli("simulate nonexistent-preset", dir);
  CHECK(missing.exit_code == 1);
}

TEST_CASE("dump-config round trip through the CLI") {
  const fs::path dir = fresh_dir("dump");
  const fs::path dumped = dir / "dumped.yaml";
  REQUIRE(run_cli("simulate fig2a --out-dir " + dir.string() + " --dump-config " +
                      dumped.string(),
                  dir)
              .exit_code == 0);
  const fs::path dir2 = dir / "second";
  fs::create_directories(dir2);
  REQUIRE(run_cli("simulate " + dumped.string() + " --out-dir " + dir2.string(), dir)
              .exit_code == 0);
  CHECK(read_file(dir / "fig2a_traditional.csv") ==
        read_file(dir2 / "fig2a_traditional.csv"));
}

TEST_CASE("yield sweep reproduces the analytic values and checks its oracle") {
  const fs::path dir = fresh_dir("yield");
  const RunResult result =
      run_cli("yield yield-dg --grid 0.5,1,2 --out-dir " + dir.string(), dir);
  CHECK(result.exit_code == 0);
  const Csv csv = parse_csv(dir / "yield-dg_yield.csv");
  REQUIRE(csv.header ==
          std::vector<std::string>{"k_or_B", "Y_S_eigenbasis", "Y_S_timedomain", "abs_diff"});
  REQUIRE(csv.rows.size() == 3);
  const double expected[3] = {0.6, 0.75, 0.9};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(csv.rows[i][1] - expected[i]) < 1e-9);
    CHECK(csv.rows[i][3] < 1e-4);
  }
}

TEST_CASE("single-point yield grid gives a single row") {
  const fs::path dir = fresh_dir("yield1");
  REQUIRE(run_cli("yield yield-dg --grid 1 --out-dir " + dir.string(), dir).exit_code == 0);
  CHECK(parse_csv(dir / "yield-dg_yield.csv").rows.size() == 1);
}

TEST_CASE("yield rejects an unsorted grid") {
  const fs::path dir = fresh_dir("yieldbad");
  CHECK(run_cli("yield yield-dg --grid 2,1 --out-dir " + dir.string(), dir).exit_code == 1);
}

TEST_CASE("field sweep mode needs gyromagnetic ratios and agrees across methods") {
  const fs::path dir = fresh_dir("bsweep");
  const fs::path cfg = dir / "field.yaml";
  std::ofstream(cfg) << R"(name: field-sweep
space:
  nuclear_spins: []
hamiltonian:
  gamma1_hz: 3.0
  gamma2_hz: 1.0
  b_gauss: 0.5
reaction:
  theories: [traditional]
  k_s: 3.0
  k_t: 3.0
integration:
  t_max: 10.0
yield:
  grid_unit: gauss
output: fieldsweep
)";
  const RunResult result = run_cli(
      "yield " + cfg.string() + " --grid 0.25,0.5 --mode b --out-dir " + dir.string(), dir);
  CHECK(result.exit_code == 0);
  const Csv csv = parse_csv(dir / "fieldsweep_yield.csv");
  REQUIRE(csv.rows.size() == 2);
  for (const auto& row : csv.rows) {
    CHECK(row[1] > 0.5);
    CHECK(row[1] < 1.0);
    CHECK(row[3] < 1e-4);
  }
  // yield falls with the field: more S-T mixing at larger B
  CHECK(csv.rows[1][1] < csv.rows[0][1]);

  // a fixed-frequency scenario cannot do a field sweep
  const RunResult bad =
      run_cli("yield yield-dg --grid 0.5 --mode b --out-dir " + dir.string(), dir);
  CHECK(bad.exit_code == 1);
}

TEST_CASE("numerical failures exit with code 2") {
  const fs::path dir = fresh_dir("unstable");
  const fs::path cfg = dir / "unstable.yaml";
  std::ofstream(cfg) << R"(name: unstable
space:
  nuclear_spins: []
hamiltonian:
  omega1: 1.05
  omega2: 0.95
reaction:
  theories: [traditional]
  k_s: 0.5
  k_t: 0.5
integration:
  t_max: 1000.0
  dt: 50.0
)";
  const RunResult result =
      run_cli("simulate " + cfg.string() + " --out-dir " + dir.string(), dir);
  CHECK(result.exit_code == 2);
  CHECK(result.err.find("reduce dt") != std::string::npos);
}

TEST_CASE("sensitivity table rows") {
  const fs::path dir = fresh_dir("sens");
  const RunResult eq1 = run_cli("sensitivity --n0 1e16 --tr 1e-5 --tau 1", dir);
  CHECK(eq1.exit_code == 0);
  CHECK(eq1.out.find("Eq. (1)") != std::string::npos);
  CHECK(eq1.out.find("1.129e-12 G") != std::string::npos);

  const RunResult eq2 = run_cli("sensitivity --snr 100 --tr 1e-5", dir);
  CHECK(eq2.exit_code == 0);
  CHECK(eq2.out.find("3.571e-4 G") != std::string::npos);

  const RunResult eq4 =
      run_cli("sensitivity --te 1e-6 --dte-db 1e-3 --snr 1 --tr 1e-5", dir);
  CHECK(eq4.exit_code == 0);
  CHECK(eq4.out.find("1.000e-4 G") != std::string::npos);
  CHECK(eq4.out.find("1.000e-7 s") != std::string::npos);
  CHECK(eq4.out.find("VIOLATED") != std::string::npos);
  CHECK(eq4.out.find("3.571e2") != std::string::npos);

  const RunResult eq3 = run_cli("sensitivity --delta-o 0.01 --do-db 2", dir);
  CHECK(eq3.exit_code == 0);
  CHECK(eq3.out.find("5.000e-3 G") != std::string::npos);

  const RunResult none = run_cli("sensitivity --n0 1e16", dir);
  CHECK(none.exit_code == 1);

  const RunResult warn = run_cli("sensitivity --n0 1e4 --snr 1e8 --tr 1e-5", dir);
  CHECK(warn.exit_code == 0);
  CHECK(warn.err.find("warning") != std::string::npos);
}

TEST_CASE("check subcommand runs the invariant suite") {
  const fs::path dir = fresh_dir("check");
  const RunResult result = run_cli("check", dir);
  CHECK(result.exit_code == 0);
  CHECK(result.out.find("ok") != std::string::npos);
  CHECK(result.out.find("FAIL") == std::string::npos);
}
