#include "orbitshare/config.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace orbitshare;

namespace {
std::string minimal_cfg(const std::string& extra_run = "") {
  return "[frame]\n"
         "n_leo_slots = 400\n"
         "alpha = 8\n"
         "[link.leo]\n"
         "tx_power_dbm = 23\n"
         "rx_gain_dbi = 24.2\n"
         "path_loss_db = 161.4\n"
         "noise_temp_dbk = 26.4\n"
         "bandwidth_hz = 180000\n"
         "[link.geo]\n"
         "tx_power_dbm = 23\n"
         "rx_gain_dbi = 43.6\n"
         "path_loss_db = 190.6\n"
         "noise_temp_dbk = 25.0\n"
         "bandwidth_hz = 180000\n"
         "[run]\n"
         "beta = 1.0\n" + extra_run;
}
}  // namespace

TEST_CASE("parses a complete configuration") {
  const auto cfg = parse_config(minimal_cfg("scenario = b\nrate_geo = 0.1\nmaster_seed = 42\n"));
  CHECK(cfg.geometry.n_leo_slots == 400);
  CHECK(cfg.geometry.alpha == 8);
  CHECK(cfg.link_leo.rx_gain_dbi == doctest::Approx(24.2));
  CHECK(cfg.link_geo.path_loss_db == doctest::Approx(190.6));
  CHECK(cfg.scenario == Scenario::B);
  CHECK(cfg.rate_geo == doctest::Approx(0.1));
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.warnings.empty());
}

TEST_CASE("comments and whitespace are tolerated") {
  const auto cfg = parse_config("# header comment\n" + minimal_cfg("  n_frames =  100  # trailing\n"));
  CHECK(cfg.n_frames == 100);
}

TEST_CASE("unknown keys fail strictly, warn leniently") {
  const auto text = minimal_cfg("mystery_knob = 3\n");
  CHECK_THROWS_AS(parse_config(text), ParseError);
  const auto cfg = parse_config(text, /*lenient=*/true);
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(cfg.warnings[0].find("mystery_knob") != std::string::npos);
}

TEST_CASE("empty input violates the required-section rules") {
  CHECK_THROWS_AS(parse_config(""), ValidationError);
}

TEST_CASE("all violations are reported together") {
  // alpha does not divide the slot count AND beta is invalid.
  std::string text = minimal_cfg();
  const auto pos = text.find("alpha = 8");
  text.replace(pos, 9, "alpha = 7");
  text += "beta = -1\n";
  try {
    parse_config(text);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violations().size() == 2);
  }
}

TEST_CASE("malformed lines carry their line number") {
  try {
    parse_config("[frame]\nn_leo_slots 400\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("a run section in the reference shape loads") {
  const auto cfg = parse_config(minimal_cfg(
      "scenario = a\nrate_leo = 1.0\nrate_geo = 0.125\nload_start = 0.1\n"
      "load_stop = 4.0\nload_step = 0.05\nn_frames = 2000\n"));
  CHECK(cfg.load_grid.stop == doctest::Approx(4.0));
  CHECK(cfg.n_frames == 2000);
}
