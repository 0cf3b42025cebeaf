#include "orbitshare/sweep.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace orbitshare {

std::vector<double> LoadGrid::points() const {
  if (!(step > 0.0) || !(stop >= start) || !(start > 0.0))
    throw std::invalid_argument("load grid: need start > 0, stop >= start, step > 0");
  std::vector<double> out;
  for (double g = start; g <= stop + 0.5 * step; g += step) out.push_back(g);
  return out;
}

const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::BothPreferShare: return "both-prefer-share";
    case Quadrant::BothPreferSeparate: return "both-prefer-separate";
    case Quadrant::LeoOnly: return "leo-only";
    case Quadrant::GeoOnly: return "geo-only";
  }
  return "?";
}

Quadrant classify_pair(double s_leo, double s_geo, double bench_leo, double bench_geo) {
  const bool leo_gain = s_leo > bench_leo;
  const bool geo_gain = s_geo > bench_geo;
  if (leo_gain && geo_gain) return Quadrant::BothPreferShare;
  if (leo_gain) return Quadrant::LeoOnly;
  if (geo_gain) return Quadrant::GeoOnly;
  return Quadrant::BothPreferSeparate;
}

Populations populations_for_load(double g, double beta, std::uint32_t alpha,
                                 std::uint32_t n_leo_slots) {
  if (!(g > 0.0) || !(beta > 0.0)) throw std::invalid_argument("load and beta must be > 0");
  Populations p;
  const double n = static_cast<double>(n_leo_slots);
  p.u_geo = static_cast<std::uint32_t>(std::lround(g * n / (beta + static_cast<double>(alpha))));
  p.u_leo = static_cast<std::uint32_t>(std::lround(beta * static_cast<double>(p.u_geo)));
  if (p.u_geo == 0 || p.u_leo == 0)
    throw std::domain_error("degenerate-load: a participating population rounded to 0");
  p.actual_g = (static_cast<double>(p.u_leo) +
                static_cast<double>(alpha) * static_cast<double>(p.u_geo)) / n;
  return p;
}

Populations populations_for_load_single(double g, ServiceTag service,
                                        std::uint32_t n_slots) {
  if (!(g > 0.0)) throw std::invalid_argument("load must be > 0");
  Populations p;
  const auto u = static_cast<std::uint32_t>(std::lround(g * static_cast<double>(n_slots)));
  if (u == 0) throw std::domain_error("degenerate-load: population rounded to 0");
  (service == ServiceTag::Leo ? p.u_leo : p.u_geo) = u;
  p.actual_g = static_cast<double>(u) / static_cast<double>(n_slots);
  return p;
}

std::vector<double> boundary_rates(const TinSicModel& model, unsigned h_min,
                                   unsigned h_max, double epsilon) {
  std::vector<double> out;
  for (unsigned h = h_min; h <= h_max; ++h) {
    const double r = mutual_info_single(model, h) - epsilon;
    if (r > 0.0) out.push_back(r);
  }
  return out;
}

namespace {

int own_tau_or_minus_one(const TinSicModel& model, const Rate& rate) {
  if (!decodes(rate, mutual_info_single(model, 0))) return -1;
  return static_cast<int>(tau(model, rate));
}

// Evaluates one load-grid point; returns one point per participating
// service (LEO first).
std::vector<ThroughputPoint> evaluate_point(const ScenarioConfig& base,
                                            const SweepPlan& plan, double load,
                                            std::uint64_t point_seed) {
  ScenarioConfig cfg = base;
  std::vector<ThroughputPoint> out;

  ThroughputPoint proto;
  proto.scenario = base.scenario;
  proto.rate_leo = base.rates.leo.bits_per_symbol;
  proto.rate_geo = base.rates.geo.bits_per_symbol;
  proto.alpha = base.geometry.alpha;
  proto.beta = plan.beta;
  proto.load_configured = load;

  if (base.scenario == Scenario::A) {
    const ServiceTag service = base.u_leo > 0 ? ServiceTag::Leo : ServiceTag::Geo;
    Populations pops;
    try {
      pops = populations_for_load_single(load, service, base.geometry.n_leo_slots);
    } catch (const std::domain_error&) {
      return out;  // unreachable load point, skipped
    }
    cfg.u_leo = pops.u_leo;
    cfg.u_geo = pops.u_geo;
    auto est = estimate_success(cfg, plan.n_frames, point_seed, 1);
    ThroughputPoint pt = proto;
    pt.service = service;
    pt.u_leo = pops.u_leo;
    pt.u_geo = pops.u_geo;
    pt.load_actual = pops.actual_g;
    pt.ps = service == ServiceTag::Leo ? est.ps_leo : est.ps_geo;
    pt.ci_halfwidth = service == ServiceTag::Leo ? est.ci_leo : est.ci_geo;
    const auto& rate = service == ServiceTag::Leo ? base.rates.leo : base.rates.geo;
    const auto& model = service == ServiceTag::Leo ? base.models.leo : base.models.geo;
    pt.tau = own_tau_or_minus_one(model, rate);
    pt.throughput = throughput(Scenario::A, rate.bits_per_symbol, pt.load_actual, pt.ps);
    out.push_back(pt);
    return out;
  }

  Populations pops;
  try {
    pops = populations_for_load(load, plan.beta, base.geometry.alpha,
                                base.geometry.n_leo_slots);
  } catch (const std::domain_error&) {
    return out;
  }
  cfg.u_leo = pops.u_leo;
  cfg.u_geo = pops.u_geo;
  auto est = estimate_success(cfg, plan.n_frames, point_seed, 1);
  const double n_leo = static_cast<double>(base.geometry.n_leo_slots);

  ThroughputPoint leo = proto;
  leo.service = ServiceTag::Leo;
  leo.u_leo = pops.u_leo;
  leo.u_geo = pops.u_geo;
  leo.load_actual = pops.actual_g;
  leo.ps = est.ps_leo;
  leo.ci_halfwidth = est.ci_leo;
  leo.tau = own_tau_or_minus_one(base.models.leo, base.rates.leo);
  const double load_leo = static_cast<double>(pops.u_leo) / n_leo;
  leo.throughput = throughput(Scenario::B, leo.rate_leo, load_leo, leo.ps);
  out.push_back(leo);

  ThroughputPoint geo = proto;
  geo.service = ServiceTag::Geo;
  geo.u_leo = pops.u_leo;
  geo.u_geo = pops.u_geo;
  geo.load_actual = pops.actual_g;
  geo.ps = est.ps_geo;
  geo.ci_halfwidth = est.ci_geo;
  geo.tau = own_tau_or_minus_one(base.models.geo, base.rates.geo);
  const double load_geo = static_cast<double>(pops.u_geo) /
                          static_cast<double>(base.geometry.n_geo_slots());
  geo.throughput = throughput(Scenario::B, geo.rate_geo, load_geo, geo.ps);
  out.push_back(geo);
  return out;
}

void run_points(const ScenarioConfig& base, const SweepPlan& plan,
                const std::vector<double>& loads, std::size_t first_index,
                std::vector<std::vector<ThroughputPoint>>& results) {
  results.resize(loads.size());
  std::atomic<std::size_t> next{first_index};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= loads.size()) break;
      results[i] = evaluate_point(base, plan, loads[i],
                                  substream_seed(plan.master_seed, i));
    }
  };
  const unsigned jobs = plan.jobs == 0 ? 1 : plan.jobs;
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
}

std::size_t argmax_for_service(const std::vector<std::vector<ThroughputPoint>>& results,
                               ServiceTag service, bool& found) {
  std::size_t best = 0;
  double best_s = -1.0;
  found = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (const auto& pt : results[i]) {
      if (pt.service != service) continue;
      if (pt.throughput > best_s) {
        best_s = pt.throughput;
        best = i;
        found = true;
      }
    }
  }
  return best;
}

}  // namespace

PeakSearchResult peak_over_load(const ScenarioConfig& base, const SweepPlan& plan) {
  std::vector<double> loads = plan.load_grid.points();
  std::vector<std::vector<ThroughputPoint>> results;
  const bool has_leo = base.scenario == Scenario::B || base.u_leo > 0;
  const bool has_geo = base.scenario == Scenario::B || base.u_geo > 0;

  run_points(base, plan, loads, 0, results);
  for (int extension = 0; plan.auto_extend && extension < 12; ++extension) {
    bool at_edge = false;
    for (ServiceTag service : {ServiceTag::Leo, ServiceTag::Geo}) {
      if (service == ServiceTag::Leo && !has_leo) continue;
      if (service == ServiceTag::Geo && !has_geo) continue;
      bool found = false;
      const std::size_t am = argmax_for_service(results, service, found);
      if (found && am + 1 >= loads.size()) at_edge = true;
    }
    if (!at_edge) break;
    const std::size_t first_new = loads.size();
    const double top = loads.back();
    const std::size_t extra = std::max<std::size_t>(10, loads.size() / 4);
    for (std::size_t k = 1; k <= extra; ++k)
      loads.push_back(top + static_cast<double>(k) * plan.load_grid.step);
    run_points(base, plan, loads, first_new, results);
  }

  PeakSearchResult out;
  for (ServiceTag service : {ServiceTag::Leo, ServiceTag::Geo}) {
    if (service == ServiceTag::Leo && !has_leo) continue;
    if (service == ServiceTag::Geo && !has_geo) continue;
    bool found = false;
    const std::size_t am = argmax_for_service(results, service, found);
    if (!found) continue;
    for (const auto& pt : results[am]) {
      if (pt.service != service) continue;
      ThroughputPoint peak = pt;
      peak.is_peak = true;
      peak.at_grid_edge = (am == 0 || am + 1 >= loads.size());
      (service == ServiceTag::Leo ? out.peak_leo : out.peak_geo) = peak;
    }
  }
  for (auto& r : results)
    for (auto& pt : r) out.samples.push_back(pt);
  return out;
}

std::vector<RateSweepEntry> rate_sweep_scenario_a(ServiceTag service,
                                                  const TinSicModel& model,
                                                  const std::vector<double>& rates,
                                                  const FrameGeometry& geometry,
                                                  const SweepPlan& plan) {
  std::vector<RateSweepEntry> out;
  std::map<unsigned, double> threshold_cache;
  for (double r : rates) {
    RateSweepEntry entry;
    const Rate rate{r, service};
    if (!decodes(rate, mutual_info_single(model, 0))) {
      entry.feasible = false;
      entry.peak.service = service;
      (service == ServiceTag::Leo ? entry.peak.rate_leo : entry.peak.rate_geo) = r;
      out.push_back(entry);
      continue;
    }
    const unsigned t = tau(model, rate);
    auto it = threshold_cache.find(t);
    if (it == threshold_cache.end()) it = threshold_cache.emplace(t, threshold(t)).first;
    entry.de_approx = r * it->second / 2.0;

    ScenarioConfig base;
    base.scenario = Scenario::A;
    base.geometry = geometry;
    if (service == ServiceTag::Leo) {
      base.u_leo = 1;
      base.rates.leo = rate;
      base.models.leo = model;
    } else {
      base.u_geo = 1;
      base.rates.geo = rate;
      base.models.geo = model;
    }
    auto peak = peak_over_load(base, plan);
    entry.peak = service == ServiceTag::Leo ? peak.peak_leo : peak.peak_geo;
    entry.samples = std::move(peak.samples);
    out.push_back(entry);
  }
  return out;
}

std::vector<PairClassification> pair_sweep_scenario_b(
    const std::vector<RatePair>& pairs, double beta, const FrameGeometry& geometry,
    const ReceiverModels& models, const Benchmarks& benchmarks, const SweepPlan& plan,
    PairMode mode) {
  std::vector<PairClassification> out;
  for (const auto& pair : pairs) {
    const Rate rate_leo{pair.rate_leo, ServiceTag::Leo};
    const Rate rate_geo{pair.rate_geo, ServiceTag::Geo};
    // Each rate must be decodable at its own satellite.
    if (!decodes(rate_leo, mutual_info_single(models.leo, 0))) continue;
    if (!decodes(rate_geo, mutual_info_single(models.geo, 0))) continue;

    ScenarioConfig base;
    base.scenario = Scenario::B;
    base.geometry = geometry;
    base.geometry.alpha = pair.alpha;
    base.geometry.validate();
    base.rates = {rate_leo, rate_geo};
    base.models = models;

    SweepPlan local = plan;
    local.beta = beta;
    auto peak = peak_over_load(base, local);

    PairClassification pc;
    pc.alpha = pair.alpha;
    pc.beta = beta;
    pc.rate_leo = pair.rate_leo;
    pc.rate_geo = pair.rate_geo;
    pc.bench_leo = benchmarks.leo;
    pc.bench_geo = benchmarks.geo;
    if (mode == PairMode::PerServiceArgmax) {
      pc.s_leo = peak.peak_leo.throughput;
      pc.argmax_g_leo = peak.peak_leo.load_actual;
      pc.s_geo = peak.peak_geo.throughput;
      pc.argmax_g_geo = peak.peak_geo.load_actual;
    } else {
      // Both coordinates at the common load maximizing the pair sum.
      double best = -1.0;
      for (std::size_t i = 0; i + 1 < peak.samples.size(); i += 2) {
        const auto& leo = peak.samples[i];
        const auto& geo = peak.samples[i + 1];
        if (leo.throughput + geo.throughput > best) {
          best = leo.throughput + geo.throughput;
          pc.s_leo = leo.throughput;
          pc.s_geo = geo.throughput;
          pc.argmax_g_leo = leo.load_actual;
          pc.argmax_g_geo = geo.load_actual;
        }
      }
    }
    pc.quadrant = classify_pair(pc.s_leo, pc.s_geo, pc.bench_leo, pc.bench_geo);
    out.push_back(pc);
  }
  return out;
}

}  // namespace orbitshare
