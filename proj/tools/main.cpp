// orbitshare: CRDSA spectrum-sharing simulator for a LEO/GEO IoT scenario.
//
// Subcommands produce machine-readable CSV/JSON; diagnostics go to stderr.
// Exit codes: 0 success, 1 configuration/validation error, 2 runtime failure.

#include "orbitshare/bundles.hpp"
#include "orbitshare/config.hpp"
#include "orbitshare/csv.hpp"
#include "orbitshare/deanalysis.hpp"
#include "orbitshare/linkbudget.hpp"
#include "orbitshare/macsim.hpp"
#include "orbitshare/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace orbitshare;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = bundles::kMasterSeed;
  bool seed_set = false;
  std::size_t frames = 0;  // 0: take from config/bundle
  unsigned jobs = 0;
  bool lenient = false;
  std::string pair_mode = "per-service-argmax";
};

unsigned default_jobs() {
  if (const char* env = std::getenv("ORBITSHARE_JOBS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

RunConfig effective_config(const GlobalOptions& opt) {
  RunConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = load_config(opt.config_path, opt.lenient);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  } else {
    cfg.link_leo = bundles::leo_link();
    cfg.link_leo.snr_override_db = bundles::kLeoSnrDb;
    cfg.link_geo = bundles::geo_link();
    cfg.link_geo.snr_override_db = bundles::kGeoSnrDb;
    cfg.geometry = {bundles::kFrameSlots, 1};
    cfg.n_frames = bundles::kFramesPerPoint;
  }
  if (opt.seed_set) cfg.master_seed = opt.seed;
  if (opt.frames > 0) cfg.n_frames = opt.frames;
  return cfg;
}

ReceiverModels models_from(const RunConfig& cfg) {
  return {{snr(cfg.link_leo).snr_linear, ServiceTag::Leo},
          {snr(cfg.link_geo).snr_linear, ServiceTag::Geo}};
}

SweepPlan plan_from(const RunConfig& cfg, const GlobalOptions& opt) {
  SweepPlan plan;
  plan.load_grid = cfg.load_grid;
  plan.beta = cfg.beta;
  plan.n_frames = cfg.n_frames;
  plan.master_seed = cfg.master_seed;
  plan.jobs = opt.jobs ? opt.jobs : default_jobs();
  return plan;
}

std::ofstream open_out(const GlobalOptions& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  const fs::path p = fs::path(opt.out_dir) / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + p.string());
  return f;
}

void write_json(const GlobalOptions& opt, const std::string& name, const json& j) {
  auto f = open_out(opt, name);
  f << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
}

const std::vector<std::string> kSweepRateHeader = {
    "scenario", "service", "rate", "tau", "load_configured", "load_actual",
    "u_leo", "u_geo", "ps", "ci", "throughput", "de_approx", "is_peak"};

void write_rate_rows(CsvWriter& csv, const std::vector<RateSweepEntry>& entries) {
  for (const auto& e : entries) {
    if (!e.feasible) continue;
    auto row = [&](const ThroughputPoint& pt, bool peak) {
      const double rate = pt.service == ServiceTag::Leo ? pt.rate_leo : pt.rate_geo;
      csv.write_row({to_string(pt.scenario), to_string(pt.service), csv_number(rate),
                     std::to_string(pt.tau), csv_number(pt.load_configured),
                     csv_number(pt.load_actual), std::to_string(pt.u_leo),
                     std::to_string(pt.u_geo), csv_number(pt.ps),
                     csv_number(pt.ci_halfwidth), csv_number(pt.throughput),
                     csv_number(e.de_approx), peak ? "1" : "0"});
    };
    for (const auto& pt : e.samples) row(pt, false);
    row(e.peak, true);
  }
}

const std::vector<std::string> kPairHeader = {
    "alpha", "beta", "rate_leo", "rate_geo", "s_leo", "s_geo",
    "bench_leo", "bench_geo", "quadrant"};

void write_pair_rows(CsvWriter& csv, const std::vector<PairClassification>& pairs) {
  for (const auto& pc : pairs)
    csv.write_row({std::to_string(pc.alpha), csv_number(pc.beta),
                   csv_number(pc.rate_leo), csv_number(pc.rate_geo),
                   csv_number(pc.s_leo), csv_number(pc.s_geo),
                   csv_number(pc.bench_leo), csv_number(pc.bench_geo),
                   to_string(pc.quadrant)});
}

// Benchmark: each operator's segregated-band peak at its own best rate.
Benchmarks compute_benchmarks(const ReceiverModels& models, const FrameGeometry& geometry,
                              const SweepPlan& plan) {
  Benchmarks bench;
  auto best = [&](ServiceTag service, const TinSicModel& model,
                  const std::vector<double>& rates) {
    double out = 0.0;
    for (const auto& e : rate_sweep_scenario_a(service, model, rates, geometry, plan))
      if (e.feasible && e.peak.throughput > out) out = e.peak.throughput;
    return out;
  };
  bench.leo = best(ServiceTag::Leo, models.leo,
                   boundary_rates(models.leo, 0, 3, bundles::kBoundaryEpsilon));
  bench.geo = best(ServiceTag::Geo, models.geo,
                   boundary_rates(models.geo, 1, 11, bundles::kBoundaryEpsilon));
  return bench;
}

std::vector<RatePair> pairs_for_alpha(const ReceiverModels& models, std::uint32_t alpha) {
  std::vector<RatePair> out;
  const double a = static_cast<double>(alpha);
  const double cap_leo = mutual_info_single(models.leo, 0);
  const double cap_geo = mutual_info_single(models.geo, 0);
  for (unsigned h = 0; h <= 2; ++h) {
    const double rl = mutual_info_single(models.leo, h) - bundles::kBoundaryEpsilon;
    if (rl / a < cap_geo && rl / a > 0.0) out.push_back({rl, rl / a, alpha});
  }
  for (unsigned h = 3; h <= 11; ++h) {
    const double rg = mutual_info_single(models.geo, h) - bundles::kBoundaryEpsilon;
    if (rg * a < cap_leo && rg > 0.0) out.push_back({rg * a, rg, alpha});
  }
  return out;
}

int cmd_linkbudget(const GlobalOptions& opt) {
  const RunConfig cfg = effective_config(opt);
  auto f = open_out(opt, "linkbudget.csv");
  CsvWriter csv(f, {"receiver", "rx_power_dbw", "noise_power_dbw", "snr_db", "snr_linear"});
  json summary;
  for (auto [name, link] : {std::pair{"leo", cfg.link_leo}, std::pair{"geo", cfg.link_geo}}) {
    const auto r = snr(link);
    csv.write_row({name, csv_number(r.rx_power_dbw), csv_number(r.noise_power_dbw),
                   csv_number(r.snr_db), csv_number(r.snr_linear)});
    summary[name] = {{"rx_power_dbw", r.rx_power_dbw},
                     {"noise_power_dbw", r.noise_power_dbw},
                     {"snr_db", r.snr_db},
                     {"snr_linear", r.snr_linear}};
  }
  write_json(opt, "linkbudget.json", summary);
  return 0;
}

int cmd_de_threshold(const GlobalOptions& opt, std::optional<unsigned> tau_arg,
                     std::optional<double> snr_db, std::optional<double> rate_arg) {
  DeConfig de_cfg;
  json out;
  unsigned t = 0;
  if (tau_arg) {
    t = *tau_arg;
  } else if (snr_db && rate_arg) {
    TinSicModel model{std::pow(10.0, *snr_db / 10.0), ServiceTag::Leo};
    t = tau(model, Rate{*rate_arg, ServiceTag::Leo});
    out["snr_db"] = *snr_db;
    out["rate"] = *rate_arg;
  } else {
    std::cerr << "de-threshold: provide --tau, or --snr-db with --rate\n";
    return 1;
  }
  const double g = threshold(t, de_cfg);
  out["tau"] = t;
  out["threshold_g"] = g;
  if (rate_arg) out["approx_max_throughput"] = *rate_arg * g / 2.0;

  auto f = open_out(opt, "de_threshold.csv");
  CsvWriter csv(f, {"tau", "threshold_g", "approx_max_throughput"});
  csv.write_row({std::to_string(t), csv_number(g),
                 rate_arg ? csv_number(*rate_arg * g / 2.0) : "nan"});
  write_json(opt, "de_threshold.json", out);
  return 0;
}

int cmd_simulate(const GlobalOptions& opt, const std::string& scenario_str,
                 std::optional<double> rate_arg, std::optional<double> rate_leo_arg,
                 std::optional<double> rate_geo_arg, double load, const std::string& service,
                 std::optional<unsigned> alpha_arg) {
  RunConfig cfg = effective_config(opt);
  if (alpha_arg) cfg.geometry.alpha = *alpha_arg;
  const auto models = models_from(cfg);

  ScenarioConfig sc;
  sc.geometry = cfg.geometry;
  sc.models = models;
  double load_own_leo = 0.0, load_own_geo = 0.0;
  if (scenario_str == "a") {
    sc.scenario = Scenario::A;
    const ServiceTag tag = service == "geo" ? ServiceTag::Geo : ServiceTag::Leo;
    const double r = rate_arg.value_or(tag == ServiceTag::Leo ? cfg.rate_leo : cfg.rate_geo);
    const auto pops = populations_for_load_single(load, tag, cfg.geometry.n_leo_slots);
    sc.u_leo = pops.u_leo;
    sc.u_geo = pops.u_geo;
    if (tag == ServiceTag::Leo) {
      sc.rates.leo = {r, ServiceTag::Leo};
      load_own_leo = pops.actual_g;
    } else {
      sc.rates.geo = {r, ServiceTag::Geo};
      load_own_geo = pops.actual_g;
    }
  } else if (scenario_str == "b") {
    sc.scenario = Scenario::B;
    sc.geometry.validate();
    sc.rates.leo = {rate_leo_arg.value_or(cfg.rate_leo), ServiceTag::Leo};
    sc.rates.geo = {rate_geo_arg.value_or(cfg.rate_geo), ServiceTag::Geo};
    const auto pops =
        populations_for_load(load, cfg.beta, sc.geometry.alpha, sc.geometry.n_leo_slots);
    sc.u_leo = pops.u_leo;
    sc.u_geo = pops.u_geo;
    load_own_leo = static_cast<double>(pops.u_leo) / sc.geometry.n_leo_slots;
    load_own_geo = static_cast<double>(pops.u_geo) / sc.geometry.n_geo_slots();
  } else {
    std::cerr << "simulate: --scenario must be a or b\n";
    return 1;
  }

  const unsigned jobs = opt.jobs ? opt.jobs : default_jobs();
  const auto est = estimate_success(sc, cfg.n_frames, cfg.master_seed, jobs);

  auto f = open_out(opt, "simulate.csv");
  CsvWriter csv(f, {"scenario", "service", "rate", "alpha", "beta", "load", "u_leo",
                    "u_geo", "ps", "ci", "throughput"});
  json summary;
  summary["scenario"] = scenario_str;
  summary["n_frames"] = cfg.n_frames;
  summary["master_seed"] = cfg.master_seed;
  auto emit = [&](ServiceTag tag, double rate, double own_load, double ps, double ci) {
    const double s = throughput(sc.scenario, rate, own_load, ps);
    csv.write_row({scenario_str, to_string(tag), csv_number(rate),
                   std::to_string(sc.geometry.alpha), csv_number(cfg.beta),
                   csv_number(own_load), std::to_string(sc.u_leo),
                   std::to_string(sc.u_geo), csv_number(ps), csv_number(ci),
                   csv_number(s)});
    summary[to_string(tag)] = {{"ps", ps}, {"ci", ci}, {"throughput", s},
                               {"load_own", own_load}, {"rate", rate}};
  };
  if (sc.u_leo > 0)
    emit(ServiceTag::Leo, sc.rates.leo.bits_per_symbol, load_own_leo, est.ps_leo, est.ci_leo);
  if (sc.u_geo > 0)
    emit(ServiceTag::Geo, sc.rates.geo.bits_per_symbol, load_own_geo, est.ps_geo, est.ci_geo);
  write_json(opt, "simulate.json", summary);
  return 0;
}

int cmd_sweep_rate(const GlobalOptions& opt, const std::string& service) {
  const RunConfig cfg = effective_config(opt);
  const auto models = models_from(cfg);
  const auto plan = plan_from(cfg, opt);
  const ServiceTag tag = service == "geo" ? ServiceTag::Geo : ServiceTag::Leo;
  const auto& model = tag == ServiceTag::Leo ? models.leo : models.geo;
  const auto rates = tag == ServiceTag::Leo
                         ? boundary_rates(model, 0, 3, bundles::kBoundaryEpsilon)
                         : boundary_rates(model, 1, 11, bundles::kBoundaryEpsilon);
  const FrameGeometry geometry{cfg.geometry.n_leo_slots, 1};
  const auto entries = rate_sweep_scenario_a(tag, model, rates, geometry, plan);

  auto f = open_out(opt, "sweep_rate.csv");
  CsvWriter csv(f, kSweepRateHeader);
  write_rate_rows(csv, entries);
  json summary;
  double best = 0.0;
  for (const auto& e : entries)
    if (e.feasible && e.peak.throughput > best) best = e.peak.throughput;
  summary["service"] = service;
  summary["best_peak_throughput"] = best;
  summary["n_rates"] = entries.size();
  write_json(opt, "sweep_rate.json", summary);
  return 0;
}

int cmd_sweep_pairs(const GlobalOptions& opt) {
  const RunConfig cfg = effective_config(opt);
  const auto models = models_from(cfg);
  auto plan = plan_from(cfg, opt);
  const PairMode mode = opt.pair_mode == "shared-sweep" ? PairMode::SharedLoad
                                                        : PairMode::PerServiceArgmax;
  const FrameGeometry geometry{cfg.geometry.n_leo_slots, cfg.geometry.alpha};
  const auto bench = compute_benchmarks(models, {cfg.geometry.n_leo_slots, 1}, plan);
  const auto pairs = pairs_for_alpha(models, cfg.geometry.alpha);
  const auto classified =
      pair_sweep_scenario_b(pairs, cfg.beta, geometry, models, bench, plan, mode);

  auto f = open_out(opt, "sweep_pairs.csv");
  CsvWriter csv(f, kPairHeader);
  write_pair_rows(csv, classified);
  json summary;
  summary["beta"] = cfg.beta;
  summary["alpha"] = cfg.geometry.alpha;
  summary["n_pairs"] = classified.size();
  summary["bench_leo"] = bench.leo;
  summary["bench_geo"] = bench.geo;
  write_json(opt, "sweep_pairs.json", summary);
  return 0;
}

int cmd_reproduce(const GlobalOptions& opt, const std::string& figure) {
  const auto models = bundles::receiver_models();
  SweepPlan plan = bundles::default_plan(opt.frames ? opt.frames : bundles::kFramesPerPoint,
                                         opt.jobs ? opt.jobs : default_jobs());
  if (opt.seed_set) plan.master_seed = opt.seed;
  const FrameGeometry geometry{bundles::kFrameSlots, 1};

  if (figure == "fig3") {
    auto f = open_out(opt, "fig3.csv");
    CsvWriter csv(f, kSweepRateHeader);
    json summary;
    for (auto [tag, model, rates] :
         {std::tuple{ServiceTag::Leo, models.leo, bundles::fig3_leo_rates()},
          std::tuple{ServiceTag::Geo, models.geo, bundles::fig3_geo_rates()}}) {
      const auto entries = rate_sweep_scenario_a(tag, model, rates, geometry, plan);
      write_rate_rows(csv, entries);
      double best = 0.0;
      for (const auto& e : entries)
        if (e.feasible && e.peak.throughput > best) best = e.peak.throughput;
      summary[to_string(tag)]["best_peak_throughput"] = best;
    }
    write_json(opt, "fig3.json", summary);
    return 0;
  }

  const auto bench = compute_benchmarks(models, geometry, plan);
  const PairMode mode = opt.pair_mode == "shared-sweep" ? PairMode::SharedLoad
                                                        : PairMode::PerServiceArgmax;
  if (figure == "fig4") {
    const auto classified = pair_sweep_scenario_b(
        bundles::fig4_pairs_alpha8(), 1.0, {bundles::kFrameSlots, 8}, models, bench,
        plan, mode);
    auto f = open_out(opt, "fig4.csv");
    CsvWriter csv(f, kPairHeader);
    write_pair_rows(csv, classified);
    json summary;
    double best_l = 0.0, best_g = 0.0;
    for (const auto& pc : classified) {
      best_l = std::max(best_l, pc.s_leo);
      best_g = std::max(best_g, pc.s_geo);
    }
    summary = {{"beta", 1.0}, {"alpha", 8}, {"bench_leo", bench.leo},
               {"bench_geo", bench.geo}, {"best_s_leo", best_l}, {"best_s_geo", best_g}};
    write_json(opt, "fig4.json", summary);
    return 0;
  }
  if (figure == "fig6") {
    auto f = open_out(opt, "fig6.csv");
    CsvWriter csv(f, kPairHeader);
    json summary;
    summary["bench_leo"] = bench.leo;
    summary["bench_geo"] = bench.geo;
    for (auto [beta, pairs] :
         {std::pair{0.25, bundles::fig4_pairs_alpha8()},
          std::pair{4.0, bundles::fig6_beta4_pairs()}}) {
      const auto classified = pair_sweep_scenario_b(
          pairs, beta, {bundles::kFrameSlots, 8}, models, bench, plan, mode);
      write_pair_rows(csv, classified);
      json arr = json::array();
      for (const auto& pc : classified)
        arr.push_back({{"rate_leo", pc.rate_leo}, {"rate_geo", pc.rate_geo},
                       {"s_leo", pc.s_leo}, {"s_geo", pc.s_geo},
                       {"quadrant", to_string(pc.quadrant)}});
      summary["beta_" + csv_number(beta)] = arr;
    }
    write_json(opt, "fig6.json", summary);
    return 0;
  }
  std::cerr << "reproduce: unknown figure '" << figure << "' (fig3|fig4|fig6)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CRDSA LEO/GEO spectrum-sharing simulator"};
  app.require_subcommand(1);

  GlobalOptions opt;
  app.add_option("--config", opt.config_path, "configuration file")->capture_default_str();
  app.add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", opt.seed, "master seed");
  app.add_option("--frames", opt.frames, "frames per Monte Carlo point");
  app.add_option("--jobs", opt.jobs, "worker threads (default: ORBITSHARE_JOBS or 1)");
  app.add_flag("--lenient", opt.lenient, "downgrade unknown config keys to warnings");
  app.add_option("--pair-mode", opt.pair_mode,
                 "throughput-pair reading: shared-sweep | per-service-argmax")
      ->check(CLI::IsMember({"shared-sweep", "per-service-argmax"}));

  app.add_subcommand("linkbudget", "received power, noise power, SNR per receiver");

  auto* de = app.add_subcommand("de-threshold", "density-evolution decoding threshold");
  std::optional<unsigned> tau_arg;
  std::optional<double> snr_arg, rate_arg;
  de->add_option("--tau", tau_arg, "collision tolerance");
  de->add_option("--snr-db", snr_arg, "receiver SNR in dB");
  de->add_option("--rate", rate_arg, "rate in bits/symbol");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo at one operating point");
  std::string scenario_str = "a", sim_service = "leo";
  std::optional<double> sim_rate, sim_rate_leo, sim_rate_geo;
  std::optional<unsigned> sim_alpha;
  double sim_load = 0.5;
  sim->add_option("--scenario", scenario_str, "a | b")->required();
  sim->add_option("--rate", sim_rate, "rate (scenario a)");
  sim->add_option("--rate-leo", sim_rate_leo, "LEO rate (scenario b)");
  sim->add_option("--rate-geo", sim_rate_geo, "GEO rate (scenario b)");
  sim->add_option("--load", sim_load, "LEO-reference channel load")->required();
  sim->add_option("--service", sim_service, "leo | geo (scenario a)");
  sim->add_option("--alpha", sim_alpha, "GEO packet span in LEO slots");

  auto* sr = app.add_subcommand("sweep-rate", "scenario-(a) peak throughput vs rate");
  std::string sweep_service = "leo";
  sr->add_option("--service", sweep_service, "leo | geo");

  app.add_subcommand("sweep-pairs", "scenario-(b) throughput pairs with quadrants");

  auto* rep = app.add_subcommand("reproduce", "pinned figure-reproduction bundles");
  std::string figure;
  rep->add_option("figure", figure, "fig3 | fig4 | fig6")->required();

  CLI11_PARSE(app, argc, argv);
  opt.seed_set = seed_opt->count() > 0;

  try {
    if (app.got_subcommand("linkbudget")) return cmd_linkbudget(opt);
    if (app.got_subcommand("de-threshold")) return cmd_de_threshold(opt, tau_arg, snr_arg, rate_arg);
    if (app.got_subcommand("simulate"))
      return cmd_simulate(opt, scenario_str, sim_rate, sim_rate_leo, sim_rate_geo,
                          sim_load, sim_service, sim_alpha);
    if (app.got_subcommand("sweep-rate")) return cmd_sweep_rate(opt, sweep_service);
    if (app.got_subcommand("sweep-pairs")) return cmd_sweep_pairs(opt);
    if (app.got_subcommand("reproduce")) return cmd_reproduce(opt, figure);
  } catch (const ParseError& e) {
    std::cerr << "config parse error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "config validation error: " << e.what() << "\n";
    return 1;
  } catch (const InfeasibleRateError& e) {
    std::cerr << "infeasible rate: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
