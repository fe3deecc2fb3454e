// SPDX-License-Identifier: Apache-2.0
//
// SplitMix64: a counter-based 64-bit generator. The state advances by a
// fixed odd constant and each output is a bijective mix of the state, so the
// stream is fully determined by the seed. Satisfies
// UniformRandomBitGenerator and plugs into <random> distributions.

#ifndef RPO_RNG_H_
#define RPO_RNG_H_

#include <cstdint>
#include <limits>

namespace rpo {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace rpo

#endif  // RPO_RNG_H_
