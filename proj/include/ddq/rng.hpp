#pragma once

#include <cstdint>

namespace ddq {

// Counter-based generator: every value is a pure function of (key, counter),
// so substreams derived from (master seed, index) are order-independent and
// experiments stay deterministic under parallel evaluation.
//
// The mixing function is the SplitMix64 finalizer over key + counter * phi.
class CounterRng {
 public:
  CounterRng() = default;
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  // Derives an independent stream; does not advance this generator.
  CounterRng substream(std::uint64_t idx) const;

  std::uint64_t next_u64();
  double next_double();  // uniform [0,1)
  double next_uniform(double lo, double hi);
  double next_normal();  // standard normal via Box-Muller

  // Stateless access at an explicit counter; does not advance the stream.
  std::uint64_t u64_at(std::uint64_t counter) const;
  double double_at(std::uint64_t counter) const;
  // Reads counter slots c and c+1.
  double normal_at(std::uint64_t counter) const;

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace ddq
