#pragma once

#include "orbitshare/linkbudget.hpp"
#include "orbitshare/macsim.hpp"
#include "orbitshare/sweep.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitshare {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::vector<std::string>& violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct RunConfig {
  FrameGeometry geometry{400, 1};
  LinkParams link_leo;
  LinkParams link_geo;
  Scenario scenario = Scenario::A;
  double rate_leo = 1.0;
  double rate_geo = 0.125;
  double beta = 1.0;
  LoadGrid load_grid;
  std::size_t n_frames = 2000;
  std::uint64_t master_seed = 1;
  std::vector<std::string> warnings;  // populated in lenient mode
};

// Line-oriented `[section]` / `key = value` format with `#` comments.
// Unknown keys are errors unless `lenient`; missing required sections and
// violated invariants raise ValidationError listing every violation.
RunConfig parse_config(const std::string& text, bool lenient = false);

RunConfig load_config(const std::string& path, bool lenient = false);

}  // namespace orbitshare
