#include "heatlab/rng.hpp"

namespace heatlab {
namespace {

// splitmix64 finalizer; a fixed, portable bit mixer.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t CounterRng::word(std::uint64_t stream, std::uint64_t counter) const {
  // Decorrelate the three inputs by mixing them in sequence.
  return mix(mix(mix(seed_) ^ stream) ^ counter);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const {
  return static_cast<double>(word(stream, counter) >> 11) * 0x1.0p-53;
}

double CounterRng::symmetric(std::uint64_t stream, std::uint64_t counter) const {
  return 2.0 * uniform(stream, counter) - 1.0;
}

std::vector<double> CounterRng::symmetric_vector(std::uint64_t stream, int n) const {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = symmetric(stream, static_cast<std::uint64_t>(i));
  return v;
}

}  // namespace heatlab
