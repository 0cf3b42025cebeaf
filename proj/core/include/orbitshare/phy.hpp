#pragma once

#include <span>
#include <stdexcept>
#include <string>

namespace orbitshare {

enum class ServiceTag { Leo, Geo };

inline const char* to_string(ServiceTag t) { return t == ServiceTag::Leo ? "leo" : "geo"; }

// Interference-limited receiver abstraction: all packets arrive with the
// same power, uncancelled interferers are treated as noise.
struct TinSicModel {
  double snr_linear = 1.0;
  ServiceTag receiver_tag = ServiceTag::Leo;
};

struct Rate {
  double bits_per_symbol = 1.0;
  ServiceTag service_tag = ServiceTag::Leo;
};

// Thrown when a rate exceeds the single-user capacity of a receiver.
class InfeasibleRateError : public std::runtime_error {
 public:
  explicit InfeasibleRateError(const std::string& what) : std::runtime_error(what) {}
};

// log2(1 + s / (1 + h s)) for h uncancelled equal-power interferers.
double mutual_info_single(const TinSicModel& model, unsigned interferers);

// Mean of mutual_info_single over the per-portion interferer counts of a
// packet spanning several shorter slots.
double mutual_info_segmented(const TinSicModel& model,
                             std::span<const unsigned> per_portion_interferers);

// Strict decoding condition: rate below average mutual information.
bool decodes(const Rate& rate, double avg_mutual_info);

// Largest tau >= 0 with rate < mutual_info_single(model, tau). Closed form
// with a +-1 correction through the decodes predicate; throws
// InfeasibleRateError when the rate is undecodable even interference-free.
unsigned tau(const TinSicModel& model, const Rate& rate);

// Reference linear scan, used by tests to cross-check the closed form.
unsigned tau_by_scan(const TinSicModel& model, const Rate& rate);

}  // namespace orbitshare
