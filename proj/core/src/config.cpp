#include "orbitshare/config.hpp"

#include "orbitshare/phy.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace orbitshare {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "; ";
    out += parts[i];
  }
  return out;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_double(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ParseError(line, "expected a number, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& v, std::size_t line) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ParseError(line, "expected a nonnegative integer, got '" + v + "'");
  return out;
}

struct LinkKeys {
  static bool apply(LinkParams& p, const std::string& key, const std::string& value,
                    std::size_t line) {
    if (key == "tx_power_dbm") p.tx_power_dbm = parse_double(value, line);
    else if (key == "tx_gain_dbi") p.tx_gain_dbi = parse_double(value, line);
    else if (key == "rx_gain_dbi") p.rx_gain_dbi = parse_double(value, line);
    else if (key == "path_loss_db") p.path_loss_db = parse_double(value, line);
    else if (key == "noise_temp_dbk") p.noise_temp_dbk = parse_double(value, line);
    else if (key == "bandwidth_hz") p.bandwidth_hz = parse_double(value, line);
    else if (key == "carrier_freq_hz") p.carrier_freq_hz = parse_double(value, line);
    else if (key == "snr_override_db") p.snr_override_db = parse_double(value, line);
    else return false;
    return true;
  }
};

}  // namespace

ValidationError::ValidationError(const std::vector<std::string>& violations)
    : std::runtime_error("invalid configuration: " + join(violations)),
      violations_(violations) {}

RunConfig parse_config(const std::string& text, bool lenient) {
  RunConfig cfg;
  std::set<std::string> seen_sections;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;

  auto unknown = [&](const std::string& what, std::size_t line) {
    if (lenient)
      cfg.warnings.push_back("line " + std::to_string(line) + ": ignored " + what);
    else
      throw ParseError(line, "unknown " + what);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string stripped = raw;
    if (auto pos = stripped.find('#'); pos != std::string::npos) stripped.resize(pos);
    stripped = trim(stripped);
    if (stripped.empty()) continue;

    if (stripped.front() == '[') {
      if (stripped.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = trim(stripped.substr(1, stripped.size() - 2));
      static const std::set<std::string> known = {"frame", "link.leo", "link.geo", "run"};
      if (!known.contains(section)) {
        unknown("section '" + section + "'", line_no);
        section = "#ignored";
      } else {
        seen_sections.insert(section);
      }
      continue;
    }

    const auto eq = stripped.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError(line_no, "expected 'key = value'");

    if (section == "#ignored") continue;
    if (section.empty()) throw ParseError(line_no, "key outside of any [section]");

    if (section == "frame") {
      if (key == "n_leo_slots")
        cfg.geometry.n_leo_slots = static_cast<std::uint32_t>(parse_u64(value, line_no));
      else if (key == "alpha")
        cfg.geometry.alpha = static_cast<std::uint32_t>(parse_u64(value, line_no));
      else unknown("key '" + key + "' in [frame]", line_no);
    } else if (section == "link.leo" || section == "link.geo") {
      LinkParams& link = section == "link.leo" ? cfg.link_leo : cfg.link_geo;
      if (!LinkKeys::apply(link, key, value, line_no))
        unknown("key '" + key + "' in [" + section + "]", line_no);
    } else if (section == "run") {
      if (key == "scenario") {
        if (value == "a") cfg.scenario = Scenario::A;
        else if (value == "b") cfg.scenario = Scenario::B;
        else throw ParseError(line_no, "scenario must be 'a' or 'b'");
      } else if (key == "rate_leo") cfg.rate_leo = parse_double(value, line_no);
      else if (key == "rate_geo") cfg.rate_geo = parse_double(value, line_no);
      else if (key == "beta") cfg.beta = parse_double(value, line_no);
      else if (key == "load_start") cfg.load_grid.start = parse_double(value, line_no);
      else if (key == "load_stop") cfg.load_grid.stop = parse_double(value, line_no);
      else if (key == "load_step") cfg.load_grid.step = parse_double(value, line_no);
      else if (key == "n_frames") cfg.n_frames = parse_u64(value, line_no);
      else if (key == "master_seed") cfg.master_seed = parse_u64(value, line_no);
      else unknown("key '" + key + "' in [run]", line_no);
    }
  }

  std::vector<std::string> violations;
  for (const char* required : {"frame", "link.leo", "link.geo"})
    if (!seen_sections.contains(required))
      violations.push_back(std::string("missing required section [") + required + "]");
  if (cfg.geometry.alpha == 0 || cfg.geometry.n_leo_slots == 0)
    violations.push_back("n_leo_slots and alpha must be positive");
  else if (cfg.geometry.n_leo_slots % cfg.geometry.alpha != 0)
    violations.push_back("alpha must divide n_leo_slots");
  if (!(cfg.beta > 0.0)) violations.push_back("beta must be > 0");
  if (!(cfg.rate_leo > 0.0) || !(cfg.rate_geo > 0.0))
    violations.push_back("rates must be > 0");
  if (!(cfg.load_grid.step > 0.0) || !(cfg.load_grid.start > 0.0) ||
      cfg.load_grid.stop < cfg.load_grid.start)
    violations.push_back("load grid must satisfy 0 < start <= stop, step > 0");
  for (const auto* link : {&cfg.link_leo, &cfg.link_geo})
    if (!(link->bandwidth_hz > 0.0)) violations.push_back("bandwidth_hz must be > 0");
  if (!violations.empty()) throw ValidationError(violations);
  return cfg;
}

RunConfig load_config(const std::string& path, bool lenient) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), lenient);
}

}  // namespace orbitshare
