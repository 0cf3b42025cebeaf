#pragma once

#include "orbitshare/phy.hpp"

#include <cstddef>

namespace orbitshare {

struct DeConfig {
  std::size_t grid_points = 10000;     // x-grid for the threshold predicate
  double fp_tolerance = 1e-10;         // fixed-point stop criterion
  std::size_t max_iterations = 100000;
  double bisection_tolerance = 1e-4;   // on the load G
};

struct DeResult {
  double threshold_g = 0.0;
  double residual_erasure = 0.0;
  double approx_max_throughput = 0.0;
};

struct DeIterateResult {
  double residual = 1.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// Probability that a replica in a degree-d slot stays erased when each of
// the d-1 interfering replicas is uncancelled independently with
// probability q, given a receiver that resolves up to tau collisions.
double slot_erasure_given_degree(double q, unsigned d, unsigned tau);

// Poisson average of slot_erasure_given_degree over the slot degree
// distribution; closed form 1 - e^{-2Gq} sum_{r<=tau} (2Gq)^r / r!.
double slot_erasure_avg(double q, double g, unsigned tau);

// Test oracle: explicit degree sum, truncated where the Poisson weight
// drops below 1e-16.
double slot_erasure_avg_by_degree_sum(double q, double g, unsigned tau);

// Fixed-point iteration q_i = f_s(q_{i-1}; G) from q_0 = 1.
DeIterateResult de_iterate(double g, unsigned tau, const DeConfig& cfg = {});

// Largest load for which x > f_s(x; G) on (0,1); bisection over G with a
// grid predicate refined by golden-section search near the minimum.
double threshold(unsigned tau, const DeConfig& cfg = {});

// R * G*(tau(model, rate)) / 2, the segregated-band asymptotic peak.
double approx_max_throughput(const Rate& rate, const TinSicModel& model,
                             const DeConfig& cfg = {});

}  // namespace orbitshare
