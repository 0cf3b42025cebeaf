#include "orbitshare/phy.hpp"

#include <cmath>
#include <limits>

namespace orbitshare {

double mutual_info_single(const TinSicModel& model, unsigned interferers) {
  const double s = model.snr_linear;
  return std::log2(1.0 + s / (1.0 + static_cast<double>(interferers) * s));
}

double mutual_info_segmented(const TinSicModel& model,
                             std::span<const unsigned> per_portion_interferers) {
  if (per_portion_interferers.empty())
    throw std::invalid_argument("mutual_info_segmented: empty portion list");
  double acc = 0.0;
  for (unsigned h : per_portion_interferers) acc += mutual_info_single(model, h);
  return acc / static_cast<double>(per_portion_interferers.size());
}

bool decodes(const Rate& rate, double avg_mutual_info) {
  return rate.bits_per_symbol < avg_mutual_info;
}

unsigned tau(const TinSicModel& model, const Rate& rate) {
  const double s = model.snr_linear;
  const double r = rate.bits_per_symbol;
  if (!decodes(rate, mutual_info_single(model, 0)))
    throw InfeasibleRateError("rate " + std::to_string(r) +
                              " at or above single-user capacity");
  // R < log2(1 + s/(1 + t s))  <=>  t < (s/(2^R - 1) - 1) / s
  const double bound = (s / (std::exp2(r) - 1.0) - 1.0) / s;
  double t = std::floor(bound);
  if (t < 0.0) t = 0.0;
  auto candidate = static_cast<unsigned>(t);
  // Correct floating-point boundary errors against the predicate itself.
  while (candidate > 0 && !decodes(rate, mutual_info_single(model, candidate))) --candidate;
  while (decodes(rate, mutual_info_single(model, candidate + 1))) ++candidate;
  return candidate;
}

unsigned tau_by_scan(const TinSicModel& model, const Rate& rate) {
  if (!decodes(rate, mutual_info_single(model, 0)))
    throw InfeasibleRateError("rate at or above single-user capacity");
  unsigned t = 0;
  while (decodes(rate, mutual_info_single(model, t + 1))) ++t;
  return t;
}

}  // namespace orbitshare
