#pragma once

#include "orbitshare/deanalysis.hpp"
#include "orbitshare/macsim.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orbitshare {

struct LoadGrid {
  double start = 0.1;
  double stop = 4.0;
  double step = 0.05;

  std::vector<double> points() const;
};

struct SweepPlan {
  LoadGrid load_grid;
  double beta = 1.0;
  std::size_t n_frames = 2000;
  std::uint64_t master_seed = 1;
  unsigned jobs = 1;
  // Widen the load grid while a peak sits on its upper edge.
  bool auto_extend = true;
};

struct ThroughputPoint {
  Scenario scenario = Scenario::A;
  ServiceTag service = ServiceTag::Leo;
  double rate_leo = 0.0;
  double rate_geo = 0.0;
  std::uint32_t alpha = 1;
  double beta = 1.0;
  double load_configured = 0.0;
  double load_actual = 0.0;
  std::uint32_t u_leo = 0;
  std::uint32_t u_geo = 0;
  double ps = 0.0;
  double ci_halfwidth = 0.0;
  double throughput = 0.0;
  int tau = -1;
  bool is_peak = false;
  bool at_grid_edge = false;
};

enum class Quadrant { BothPreferShare, BothPreferSeparate, LeoOnly, GeoOnly };

const char* to_string(Quadrant q);

struct PairClassification {
  std::uint32_t alpha = 1;
  double beta = 1.0;
  double rate_leo = 0.0;
  double rate_geo = 0.0;
  double s_leo = 0.0;
  double s_geo = 0.0;
  double argmax_g_leo = 0.0;
  double argmax_g_geo = 0.0;
  double bench_leo = 0.0;
  double bench_geo = 0.0;
  Quadrant quadrant = Quadrant::BothPreferSeparate;
};

Quadrant classify_pair(double s_leo, double s_geo, double bench_leo, double bench_geo);

struct Populations {
  std::uint32_t u_leo = 0;
  std::uint32_t u_geo = 0;
  double actual_g = 0.0;
};

// Shared-band population split for a target LEO-reference load:
// u_geo = round(g N_L / (beta + alpha)), u_leo = round(beta u_geo); the
// actual load is recomputed so rounding drift is visible to callers.
// Throws std::domain_error when a participating population rounds to 0.
Populations populations_for_load(double g, double beta, std::uint32_t alpha,
                                 std::uint32_t n_leo_slots);

// Single-service population for scenario (a): u = round(g N).
Populations populations_for_load_single(double g, ServiceTag service,
                                        std::uint32_t n_slots);

struct PeakSearchResult {
  ThroughputPoint peak_leo;  // valid when the LEO service participates
  ThroughputPoint peak_geo;
  std::vector<ThroughputPoint> samples;
};

// Evaluates S over the load grid for a fixed scenario configuration
// (rates, geometry, models, beta) and returns per-service peaks. Load
// point i draws its seed from (master_seed, i), so every rate evaluated
// over the same grid sees identical frames.
PeakSearchResult peak_over_load(const ScenarioConfig& base, const SweepPlan& plan);

struct RateSweepEntry {
  ThroughputPoint peak;
  double de_approx = 0.0;
  bool feasible = true;
  std::vector<ThroughputPoint> samples;
};

// Scenario (a) peak throughput per rate, with the density-evolution
// approximation alongside. Infeasible rates are recorded and skipped.
std::vector<RateSweepEntry> rate_sweep_scenario_a(ServiceTag service,
                                                  const TinSicModel& model,
                                                  const std::vector<double>& rates,
                                                  const FrameGeometry& geometry,
                                                  const SweepPlan& plan);

struct RatePair {
  double rate_leo = 0.0;
  double rate_geo = 0.0;
  std::uint32_t alpha = 1;
};

enum class PairMode {
  PerServiceArgmax,  // each service's peak over the shared load sweep
  SharedLoad,        // both services read at the common argmax of S_L + S_G
};

struct Benchmarks {
  double leo = 0.0;
  double geo = 0.0;
};

std::vector<PairClassification> pair_sweep_scenario_b(
    const std::vector<RatePair>& pairs, double beta, const FrameGeometry& geometry,
    const ReceiverModels& models, const Benchmarks& benchmarks, const SweepPlan& plan,
    PairMode mode = PairMode::PerServiceArgmax);

// Rates epsilon below the receiver's collision-tolerance boundaries
// log2(1 + s/(1 + h s)), h in [h_min, h_max].
std::vector<double> boundary_rates(const TinSicModel& model, unsigned h_min,
                                   unsigned h_max, double epsilon = 1e-6);

}  // namespace orbitshare
