#pragma once

#include "orbitshare/phy.hpp"
#include "orbitshare/rng.hpp"

#include <cstdint>
#include <vector>

namespace orbitshare {

enum class Scenario { A, B };

inline const char* to_string(Scenario s) { return s == Scenario::A ? "a" : "b"; }

// Slot layout of one MAC frame. GEO slot j covers LEO slots
// [j*alpha, (j+1)*alpha - 1]; alpha must divide n_leo_slots.
struct FrameGeometry {
  std::uint32_t n_leo_slots = 400;
  std::uint32_t alpha = 1;

  std::uint32_t n_geo_slots() const { return n_leo_slots / alpha; }
  void validate() const;
};

struct UserPlacement {
  std::uint32_t user_id = 0;
  ServiceTag service = ServiceTag::Leo;
  // Slot indices in the user's own slot system (LEO users index LEO
  // slots, GEO users index GEO slots); always two distinct replicas.
  std::uint32_t slot_a = 0;
  std::uint32_t slot_b = 0;
};

struct FramePlacement {
  FrameGeometry geometry;
  std::uint32_t n_leo_users = 0;
  std::uint32_t n_geo_users = 0;
  std::vector<UserPlacement> users;  // LEO users first, then GEO users
};

struct SicOutcome {
  std::vector<std::uint32_t> decoded_at_leo;
  std::vector<std::uint32_t> decoded_at_geo;
  std::uint32_t iterations_leo = 0;
  std::uint32_t iterations_geo = 0;
};

FramePlacement generate_frame(const FrameGeometry& geometry, std::uint32_t u_leo,
                              std::uint32_t u_geo, Rng& rng);

// Single-service peeling: a slot holding d uncancelled replicas resolves
// all of them iff d <= tau + 1; cancellation is ideal; passes repeat until
// a pass decodes nothing. Returns decoded user ids (ascending).
std::vector<std::uint32_t> sic_decode_scenario_a(const FramePlacement& placement,
                                                 unsigned tau, std::uint32_t n_slots);

struct ScenarioBRates {
  Rate leo{1.0, ServiceTag::Leo};
  Rate geo{1.0, ServiceTag::Geo};
};

struct ReceiverModels {
  TinSicModel leo{1.0, ServiceTag::Leo};
  TinSicModel geo{1.0, ServiceTag::Geo};
};

// Mixed-traffic peeling, run independently at both receivers. LEO replicas
// decode against Eq.-style single-slot mutual information, GEO replicas
// against the mean over their alpha covered LEO slots.
SicOutcome sic_decode_scenario_b(const FramePlacement& placement,
                                 const ScenarioBRates& rates,
                                 const ReceiverModels& models);

// Full description of one simulated operating point.
struct ScenarioConfig {
  Scenario scenario = Scenario::A;
  FrameGeometry geometry;
  std::uint32_t u_leo = 0;
  std::uint32_t u_geo = 0;
  ScenarioBRates rates;
  ReceiverModels models;
};

struct SuccessEstimate {
  double ps_leo = 0.0;
  double ci_leo = 0.0;  // 95% normal-approximation half-width
  double ps_geo = 0.0;
  double ci_geo = 0.0;
  std::size_t n_frames = 0;
};

// Monte Carlo estimate of the per-service success probability at each
// service's own satellite. Frame i draws its rng sub-stream from
// (master_seed, i); aggregation is by integer counts in frame order, so
// the result is bit-identical for any `jobs`.
SuccessEstimate estimate_success(const ScenarioConfig& config, std::size_t n_frames,
                                 std::uint64_t master_seed, unsigned jobs = 1);

// Normalized throughput, Eq.-(6) style: the segregated scenario carries
// the 1/2 bandwidth factor.
double throughput(Scenario scenario, double rate_bits_per_symbol, double load_own,
                  double ps);

}  // namespace orbitshare
