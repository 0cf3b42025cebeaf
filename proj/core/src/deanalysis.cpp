#include "orbitshare/deanalysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace orbitshare {

namespace {

void check_prob(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("probability outside [0,1]");
}

// e^{-m} sum_{r<=tau} m^r / r!  (upper regularized gamma of a Poisson tail)
double poisson_cdf(double m, unsigned tau) {
  double term = std::exp(-m);
  double acc = term;
  for (unsigned r = 1; r <= tau; ++r) {
    term *= m / static_cast<double>(r);
    acc += term;
  }
  return acc;
}

}  // namespace

double slot_erasure_given_degree(double q, unsigned d, unsigned tau) {
  check_prob(q);
  if (d == 0) throw std::invalid_argument("slot degree must be >= 1");
  if (d <= tau) return 0.0;
  // 1 - P(Binomial(d-1, q) <= tau)
  const unsigned n = d - 1;
  double pmf = std::pow(1.0 - q, static_cast<double>(n));  // r = 0 term
  double cdf = pmf;
  for (unsigned r = 1; r <= std::min(tau, n); ++r) {
    if (q >= 1.0) { pmf = 0.0; break; }
    pmf *= static_cast<double>(n - r + 1) / static_cast<double>(r) * q / (1.0 - q);
    cdf += pmf;
  }
  if (q >= 1.0) cdf = (tau >= n) ? 1.0 : 0.0;
  return 1.0 - std::min(cdf, 1.0);
}

double slot_erasure_avg(double q, double g, unsigned tau) {
  check_prob(q);
  if (!(g > 0.0)) throw std::invalid_argument("load must be > 0");
  // Thinning the Poisson(2G) interferer count by q gives Poisson(2Gq);
  // erasure iff more than tau uncancelled interferers survive.
  return 1.0 - poisson_cdf(2.0 * g * q, tau);
}

double slot_erasure_avg_by_degree_sum(double q, double g, unsigned tau) {
  check_prob(q);
  if (!(g > 0.0)) throw std::invalid_argument("load must be > 0");
  const double m = 2.0 * g;
  double weight = std::exp(-m);  // rho_1
  double acc = 0.0;
  for (unsigned d = 1; d < 100000; ++d) {
    if (d > 1) weight *= m / static_cast<double>(d - 1);
    if (weight < 1e-16 && d > static_cast<unsigned>(m) + 1) break;
    acc += weight * slot_erasure_given_degree(q, d, tau);
  }
  return acc;
}

DeIterateResult de_iterate(double g, unsigned tau, const DeConfig& cfg) {
  if (!(g > 0.0)) throw std::invalid_argument("load must be > 0");
  DeIterateResult out;
  double q = 1.0;
  for (std::size_t i = 0; i < cfg.max_iterations; ++i) {
    const double next = slot_erasure_avg(q, g, tau);
    out.iterations = i + 1;
    if (std::abs(next - q) < cfg.fp_tolerance) {
      out.residual = next;
      out.converged = true;
      return out;
    }
    q = next;
  }
  out.residual = q;
  return out;
}

namespace {

// min over x of x - f_s(x; G), grid plus golden-section refinement.
double predicate_margin(double g, unsigned tau, std::size_t grid_points) {
  const double lo = 1e-6;
  const double hi = 1.0 - 1e-6;
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  auto margin = [&](double x) { return x - slot_erasure_avg(x, g, tau); };

  double best = margin(lo);
  std::size_t best_i = 0;
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double m = margin(lo + step * static_cast<double>(i));
    if (m < best) { best = m; best_i = i; }
  }
  // Golden-section refinement on the bracket around the grid minimum.
  double a = lo + step * static_cast<double>(best_i > 0 ? best_i - 1 : 0);
  double b = lo + step * static_cast<double>(std::min(best_i + 1, grid_points - 1));
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = margin(c), fd = margin(d);
  for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - kInvPhi * (b - a);
      fc = margin(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + kInvPhi * (b - a);
      fd = margin(d);
    }
  }
  return std::min({best, fc, fd});
}

}  // namespace

double threshold(unsigned tau, const DeConfig& cfg) {
  auto admissible = [&](double g) { return predicate_margin(g, tau, cfg.grid_points) > 0.0; };
  double lo = 0.05;
  while (!admissible(lo)) lo *= 0.5;
  double hi = std::max(1.0, 2.0 * lo);
  while (admissible(hi)) hi *= 2.0;
  while (hi - lo > cfg.bisection_tolerance) {
    const double mid = 0.5 * (lo + hi);
    (admissible(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double approx_max_throughput(const Rate& rate, const TinSicModel& model,
                             const DeConfig& cfg) {
  const unsigned t = tau(model, rate);
  return rate.bits_per_symbol * threshold(t, cfg) / 2.0;
}

}  // namespace orbitshare
