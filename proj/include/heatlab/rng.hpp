#pragma once

#include <cstdint>
#include <vector>

namespace heatlab {

// Counter-based generator: draw i of stream s depends only on (seed, s, i),
// never on call order, so reruns with the same seed reproduce bit for bit.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Raw 64-bit word for (stream, counter).
  std::uint64_t word(std::uint64_t stream, std::uint64_t counter) const;

  // Uniform draw in [0, 1) with 53 random mantissa bits.
  double uniform(std::uint64_t stream, std::uint64_t counter) const;

  // Uniform draw in (-1, 1).
  double symmetric(std::uint64_t stream, std::uint64_t counter) const;

  // Vector of symmetric draws, entries indexed by counter 0..n-1.
  std::vector<double> symmetric_vector(std::uint64_t stream, int n) const;

 private:
  std::uint64_t seed_;
};

}  // namespace heatlab
