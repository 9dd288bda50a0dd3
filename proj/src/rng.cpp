#include "ddq/rng.hpp"

#include <cmath>

namespace ddq {
namespace {

constexpr std::uint64_t kPhi = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) {
  key_ = mix64(mix64(seed + kPhi) ^ mix64(stream + kStreamSalt));
}

CounterRng CounterRng::substream(std::uint64_t idx) const {
  CounterRng r;
  r.key_ = mix64(key_ ^ mix64(idx + kStreamSalt));
  return r;
}

std::uint64_t CounterRng::u64_at(std::uint64_t counter) const {
  return mix64(key_ + counter * kPhi);
}

std::uint64_t CounterRng::next_u64() { return u64_at(counter_++); }

double CounterRng::double_at(std::uint64_t counter) const {
  // Top 53 bits -> [0,1).
  return static_cast<double>(u64_at(counter) >> 11) * 0x1.0p-53;
}

double CounterRng::next_double() { return double_at(counter_++); }

double CounterRng::next_uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

double CounterRng::normal_at(std::uint64_t counter) const {
  // Box-Muller over slots counter and counter+1; u1 in (0,1] so the log is
  // finite.
  const double u1 =
      static_cast<double>((u64_at(counter) >> 11) + 1) * 0x1.0p-53;
  const double u2 =
      static_cast<double>(u64_at(counter + 1) >> 11) * 0x1.0p-53;
  const double two_pi = 6.283185307179586476925286766559;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

double CounterRng::next_normal() {
  const double n = normal_at(counter_);
  counter_ += 2;
  return n;
}

}  // namespace ddq
