#include "orbitshare/macsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace orbitshare {

void FrameGeometry::validate() const {
  if (n_leo_slots == 0 || alpha == 0)
    throw std::invalid_argument("frame geometry: slot count and alpha must be positive");
  if (n_leo_slots % alpha != 0)
    throw std::invalid_argument("frame geometry: alpha must divide n_leo_slots");
}

FramePlacement generate_frame(const FrameGeometry& geometry, std::uint32_t u_leo,
                              std::uint32_t u_geo, Rng& rng) {
  geometry.validate();
  if (u_leo > 0 && geometry.n_leo_slots < 2)
    throw std::invalid_argument("generate_frame: need >= 2 LEO slots");
  if (u_geo > 0 && geometry.n_geo_slots() < 2)
    throw std::invalid_argument("generate_frame: need >= 2 GEO slots");

  FramePlacement frame;
  frame.geometry = geometry;
  frame.n_leo_users = u_leo;
  frame.n_geo_users = u_geo;
  frame.users.reserve(u_leo + u_geo);
  for (std::uint32_t u = 0; u < u_leo; ++u) {
    auto [a, b] = draw_two_slots(rng, geometry.n_leo_slots);
    frame.users.push_back({u, ServiceTag::Leo, a, b});
  }
  for (std::uint32_t u = 0; u < u_geo; ++u) {
    auto [a, b] = draw_two_slots(rng, geometry.n_geo_slots());
    frame.users.push_back({u_leo + u, ServiceTag::Geo, a, b});
  }
  return frame;
}

std::vector<std::uint32_t> sic_decode_scenario_a(const FramePlacement& placement,
                                                 unsigned tau, std::uint32_t n_slots) {
  std::vector<std::uint32_t> count(n_slots, 0);
  for (const auto& u : placement.users) {
    if (u.slot_a >= n_slots || u.slot_b >= n_slots)
      throw std::invalid_argument("sic_decode_scenario_a: slot index out of range");
    ++count[u.slot_a];
    ++count[u.slot_b];
  }
  std::vector<char> alive(placement.users.size(), 1);
  std::vector<std::uint32_t> decoded;
  std::vector<std::size_t> pass;
  const std::uint32_t resolvable = tau + 1;
  bool changed = true;
  while (changed) {
    changed = false;
    pass.clear();
    for (std::size_t i = 0; i < placement.users.size(); ++i) {
      if (!alive[i]) continue;
      const auto& u = placement.users[i];
      if (count[u.slot_a] <= resolvable || count[u.slot_b] <= resolvable) pass.push_back(i);
    }
    for (std::size_t i : pass) {
      alive[i] = 0;
      --count[placement.users[i].slot_a];
      --count[placement.users[i].slot_b];
      decoded.push_back(placement.users[i].user_id);
      changed = true;
    }
  }
  std::sort(decoded.begin(), decoded.end());
  return decoded;
}

namespace {

// Peeling at one receiver over the mixed frame; interference is tracked
// at LEO-slot granularity.
struct ReceiverDecode {
  std::vector<std::uint32_t> decoded;
  std::uint32_t iterations = 0;
};

ReceiverDecode decode_at_receiver(const FramePlacement& frame, const TinSicModel& model,
                                  const ScenarioBRates& rates) {
  const auto& geo = frame.geometry;
  const std::uint32_t alpha = geo.alpha;
  std::vector<std::uint32_t> count(geo.n_leo_slots, 0);
  for (const auto& u : frame.users) {
    if (u.service == ServiceTag::Leo) {
      ++count[u.slot_a];
      ++count[u.slot_b];
    } else {
      for (std::uint32_t j = 0; j < alpha; ++j) {
        ++count[u.slot_a * alpha + j];
        ++count[u.slot_b * alpha + j];
      }
    }
  }

  // Largest interferer count a LEO-service replica survives here; -1 when
  // the rate exceeds this receiver's single-user capacity.
  long leo_tolerance = -1;
  if (decodes(rates.leo, mutual_info_single(model, 0)))
    leo_tolerance = static_cast<long>(tau(model, rates.leo));

  std::uint32_t max_count = 0;
  for (auto c : count) max_count = std::max(max_count, c);
  std::vector<double> mi(max_count + 1, 0.0);
  for (std::uint32_t h = 0; h + 1 <= max_count; ++h) mi[h] = mutual_info_single(model, h);
  const double geo_target = rates.geo.bits_per_symbol * static_cast<double>(alpha);

  auto geo_replica_decodes = [&](std::uint32_t geo_slot) {
    double acc = 0.0;
    const std::uint32_t base = geo_slot * alpha;
    for (std::uint32_t j = 0; j < alpha; ++j) acc += mi[count[base + j] - 1];
    return geo_target < acc;  // strict, per the decoding condition
  };

  std::vector<char> alive(frame.users.size(), 1);
  ReceiverDecode out;
  std::vector<std::size_t> pass;
  bool changed = true;
  while (changed) {
    changed = false;
    pass.clear();
    for (std::size_t i = 0; i < frame.users.size(); ++i) {
      if (!alive[i]) continue;
      const auto& u = frame.users[i];
      if (u.service == ServiceTag::Leo) {
        const long h = static_cast<long>(std::min(count[u.slot_a], count[u.slot_b])) - 1;
        if (h <= leo_tolerance) pass.push_back(i);
      } else {
        if (geo_replica_decodes(u.slot_a) || geo_replica_decodes(u.slot_b)) pass.push_back(i);
      }
    }
    if (!pass.empty()) {
      ++out.iterations;
      changed = true;
    }
    for (std::size_t i : pass) {
      alive[i] = 0;
      const auto& u = frame.users[i];
      if (u.service == ServiceTag::Leo) {
        --count[u.slot_a];
        --count[u.slot_b];
      } else {
        for (std::uint32_t j = 0; j < geo.alpha; ++j) {
          --count[u.slot_a * alpha + j];
          --count[u.slot_b * alpha + j];
        }
      }
      out.decoded.push_back(u.user_id);
    }
  }
  std::sort(out.decoded.begin(), out.decoded.end());
  return out;
}

}  // namespace

SicOutcome sic_decode_scenario_b(const FramePlacement& placement,
                                 const ScenarioBRates& rates,
                                 const ReceiverModels& models) {
  SicOutcome out;
  auto at_leo = decode_at_receiver(placement, models.leo, rates);
  auto at_geo = decode_at_receiver(placement, models.geo, rates);
  out.decoded_at_leo = std::move(at_leo.decoded);
  out.iterations_leo = at_leo.iterations;
  out.decoded_at_geo = std::move(at_geo.decoded);
  out.iterations_geo = at_geo.iterations;
  return out;
}

namespace {

struct FrameCounts {
  std::uint32_t leo_ok = 0;
  std::uint32_t geo_ok = 0;
};

FrameCounts run_one_frame(const ScenarioConfig& cfg, std::uint64_t master_seed,
                          std::size_t frame_index) {
  FrameCounts fc;
  if (cfg.scenario == Scenario::A) {
    // Segregated bands: each service peels in its own frame of
    // n_leo_slots slots. Independent sub-streams per band.
    if (cfg.u_leo > 0) {
      auto rng = make_rng(master_seed, 2 * frame_index);
      FrameGeometry g{cfg.geometry.n_leo_slots, 1};
      auto frame = generate_frame(g, cfg.u_leo, 0, rng);
      const unsigned t = tau(cfg.models.leo, cfg.rates.leo);
      fc.leo_ok = static_cast<std::uint32_t>(
          sic_decode_scenario_a(frame, t, g.n_leo_slots).size());
    }
    if (cfg.u_geo > 0) {
      auto rng = make_rng(master_seed, 2 * frame_index + 1);
      FrameGeometry g{cfg.geometry.n_leo_slots, 1};
      FramePlacement frame = generate_frame(g, cfg.u_geo, 0, rng);
      const unsigned t = tau(cfg.models.geo, cfg.rates.geo);
      fc.geo_ok = static_cast<std::uint32_t>(
          sic_decode_scenario_a(frame, t, g.n_leo_slots).size());
    }
  } else {
    auto rng = make_rng(master_seed, frame_index);
    auto frame = generate_frame(cfg.geometry, cfg.u_leo, cfg.u_geo, rng);
    auto outcome = sic_decode_scenario_b(frame, cfg.rates, cfg.models);
    for (auto id : outcome.decoded_at_leo)
      if (id < cfg.u_leo) ++fc.leo_ok;
    for (auto id : outcome.decoded_at_geo)
      if (id >= cfg.u_leo) ++fc.geo_ok;
  }
  return fc;
}

struct PsAccumulator {
  double ps = 0.0;
  double ci = 0.0;
};

PsAccumulator reduce_fractions(const std::vector<std::uint32_t>& ok, std::uint32_t active) {
  PsAccumulator acc;
  if (active == 0) return acc;
  const double n = static_cast<double>(ok.size());
  double mean = 0.0;
  for (auto k : ok) mean += static_cast<double>(k);
  mean /= n * static_cast<double>(active);
  acc.ps = mean;
  if (ok.size() > 1) {
    double var = 0.0;
    for (auto k : ok) {
      const double f = static_cast<double>(k) / static_cast<double>(active);
      var += (f - mean) * (f - mean);
    }
    var /= n - 1.0;
    acc.ci = 1.959963984540054 * std::sqrt(var / n);
  }
  return acc;
}

}  // namespace

SuccessEstimate estimate_success(const ScenarioConfig& config, std::size_t n_frames,
                                 std::uint64_t master_seed, unsigned jobs) {
  if (n_frames == 0) throw std::invalid_argument("estimate_success: n_frames must be >= 1");
  config.geometry.validate();
  if (jobs == 0) jobs = 1;

  std::vector<std::uint32_t> leo_ok(n_frames, 0), geo_ok(n_frames, 0);
  auto worker = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < n_frames; i += stride) {
      auto fc = run_one_frame(config, master_seed, i);
      leo_ok[i] = fc.leo_ok;
      geo_ok[i] = fc.geo_ok;
    }
  };
  if (jobs == 1 || n_frames < 2 * jobs) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker, t, jobs);
    for (auto& th : pool) th.join();
  }

  SuccessEstimate out;
  out.n_frames = n_frames;
  const auto leo = reduce_fractions(leo_ok, config.u_leo);
  const auto geo = reduce_fractions(geo_ok, config.u_geo);
  out.ps_leo = leo.ps;
  out.ci_leo = leo.ci;
  out.ps_geo = geo.ps;
  out.ci_geo = geo.ci;
  return out;
}

double throughput(Scenario scenario, double rate_bits_per_symbol, double load_own,
                  double ps) {
  if (rate_bits_per_symbol < 0.0 || load_own < 0.0 || ps < 0.0)
    throw std::invalid_argument("throughput: inputs must be nonnegative");
  const double s = rate_bits_per_symbol * load_own * ps;
  return scenario == Scenario::A ? 0.5 * s : s;
}

}  // namespace orbitshare
