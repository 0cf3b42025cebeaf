#pragma once

#include <cstdint>
#include <random>

namespace orbitshare {

// splitmix64 step; used both as a generator and as the mixing function
// that derives independent sub-stream seeds from (master_seed, index).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d4a2c479e9a26dULL;
  return z ^ (z >> 31);
}

// Derives a sub-stream seed for trial/job `index` under `master_seed`.
// The result depends only on the pair, never on execution order, so
// simulations are bit-identical across any degree of parallelism.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::uint64_t s = master_seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  std::uint64_t b = splitmix64(s);
  s = b;
  return splitmix64(s);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t master_seed, std::uint64_t index) {
  return Rng(substream_seed(master_seed, index));
}

// Two distinct uniform slot indices in [0, n), n >= 2.
inline std::pair<std::uint32_t, std::uint32_t> draw_two_slots(Rng& rng, std::uint32_t n) {
  std::uniform_int_distribution<std::uint32_t> first(0, n - 1);
  std::uniform_int_distribution<std::uint32_t> second(0, n - 2);
  std::uint32_t a = first(rng);
  std::uint32_t b = second(rng);
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace orbitshare
