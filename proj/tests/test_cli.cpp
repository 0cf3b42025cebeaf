#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = ORBITSHARE_CLI_PATH;
const std::string kPaperCfg = ORBITSHARE_PAPER_CFG;

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path temp_dir(const std::string& tag) {
  const auto d = fs::temp_directory_path() / ("orbitshare_cli_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("linkbudget writes the expected outputs and exits 0") {
  const auto d = temp_dir("lb");
  CHECK(run("--config " + kPaperCfg + " --out " + d.string() + " linkbudget") == 0);
  CHECK(fs::exists(d / "linkbudget.csv"));
  CHECK(fs::exists(d / "linkbudget.json"));
  const auto csv = slurp(d / "linkbudget.csv");
  CHECK(csv.find("receiver,rx_power_dbw") == 0);
  CHECK(csv.find("leo") != std::string::npos);
  CHECK(csv.find("geo") != std::string::npos);
}

TEST_CASE("de-threshold with a tolerance argument") {
  const auto d = temp_dir("de");
  CHECK(run("--out " + d.string() + " de-threshold --tau 0") == 0);
  const auto csv = slurp(d / "de_threshold.csv");
  // tau 0 threshold is 0.5 to within the solver tolerance.
  const auto row = csv.substr(csv.find("\n0,") + 3);
  CHECK(std::stod(row) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("simulate output is byte-identical across reruns and --jobs") {
  const auto common = std::string("--config ") + kPaperCfg +
                      " --frames 150 --seed 31 simulate --scenario b"
                      " --alpha 8 --rate-leo 0.82 --rate-geo 0.1 --load 1.0";
  const auto d1 = temp_dir("sim1"), d2 = temp_dir("sim2"), d3 = temp_dir("sim3");
  CHECK(run("--out " + d1.string() + " --jobs 1 " + common) == 0);
  CHECK(run("--out " + d2.string() + " --jobs 1 " + common) == 0);
  CHECK(run("--out " + d3.string() + " --jobs 4 " + common) == 0);
  const auto a = slurp(d1 / "simulate.csv");
  CHECK(a == slurp(d2 / "simulate.csv"));
  CHECK(a == slurp(d3 / "simulate.csv"));
  CHECK(slurp(d1 / "simulate.json") == slurp(d3 / "simulate.json"));
}

TEST_CASE("a different seed changes the Monte Carlo result") {
  const auto common = std::string("--config ") + kPaperCfg +
                      " --frames 150 simulate --scenario a --rate 0.82 --load 1.4";
  const auto d1 = temp_dir("seed1"), d2 = temp_dir("seed2");
  CHECK(run("--out " + d1.string() + " --seed 1 " + common) == 0);
  CHECK(run("--out " + d2.string() + " --seed 2 " + common) == 0);
  CHECK(slurp(d1 / "simulate.csv") != slurp(d2 / "simulate.csv"));
}

TEST_CASE("configuration errors exit 1") {
  const auto d = temp_dir("badcfg");
  {
    std::ofstream bad(d / "bad.cfg");
    bad << "[frame]\nn_leo_slots = 400\nalpha = 7\n";
  }
  CHECK(run("--config " + (d / "bad.cfg").string() + " --out " + d.string() +
            " linkbudget") == 1);
  CHECK(run("--config " + (d / "missing.cfg").string() + " --out " + d.string() +
            " linkbudget") == 2);
}

TEST_CASE("unknown keys pass under --lenient") {
  const auto d = temp_dir("lenient");
  std::ofstream cfg(d / "extra.cfg");
  cfg << slurp(kPaperCfg) << "\nfuture_knob = 1\n";
  cfg.close();
  CHECK(run("--config " + (d / "extra.cfg").string() + " --out " + d.string() +
            " linkbudget") == 1);
  CHECK(run("--lenient --config " + (d / "extra.cfg").string() + " --out " +
            d.string() + " linkbudget") == 0);
}

TEST_CASE("infeasible rates exit 1") {
  const auto d = temp_dir("infeasible");
  CHECK(run("--config " + kPaperCfg + " --out " + d.string() +
            " --frames 10 simulate --scenario a --rate 9.0 --load 0.5") == 1);
}

TEST_CASE("ORBITSHARE_JOBS only sets the default worker count") {
  const auto d1 = temp_dir("envj1"), d2 = temp_dir("envj2");
  const auto common = std::string("--config ") + kPaperCfg +
                      " --frames 120 --seed 8 simulate --scenario a --rate 0.82 --load 1.2";
  const std::string env_cmd = "ORBITSHARE_JOBS=3 " + kCli + " --out " + d1.string() +
                              " " + common + " >/dev/null 2>/dev/null";
  CHECK(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
  CHECK(run("--out " + d2.string() + " --jobs 1 " + common) == 0);
  CHECK(slurp(d1 / "simulate.csv") == slurp(d2 / "simulate.csv"));
}
