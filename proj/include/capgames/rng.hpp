#pragma once

#include <cstdint>
#include <vector>

namespace capgames {

// SplitMix64 (Steele, Lea & Vigna): a 64-bit generator with a one-word
// state and a fixed output function, so streams are reproducible across
// platforms and cheap to split by seed derivation.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) from the high 53 bits.
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Seed for an independent stream: one SplitMix64 output of the master seed
// advanced by (index + 1) golden-ratio strides.
inline std::uint64_t derive_stream_seed(std::uint64_t master,
                                        std::uint64_t index) {
  SplitMix64 g(master + (index + 1) * 0x9E3779B97F4A7C15ULL);
  return g.next();
}

// Index sampled from a probability vector by inverse-CDF walk on one draw.
inline int sample_index(SplitMix64& rng, const std::vector<double>& probs) {
  const double u = rng.next_double();
  double cum = 0.0;
  int last_positive = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] > 0.0) last_positive = static_cast<int>(j);
    cum += probs[j];
    if (u < cum) return static_cast<int>(j);
  }
  return last_positive;  // guards against cum < 1 from rounding
}

}  // namespace capgames
