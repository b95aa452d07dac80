#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

#include <json.hpp>

namespace procflow {

/// splitmix64 (Steele, Lea, Flood), used only to expand seeds.
struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// xoshiro256** 1.0 (Blackman & Vigna). State lives in the owning process
/// p-state so runs replay bit-exactly; serialized as the four state words.
class Xoshiro256StarStar {
 public:
  Xoshiro256StarStar() : s_{1, 2, 3, 4} {}
  explicit Xoshiro256StarStar(const std::array<std::uint64_t, 4>& s) : s_(s) {}

  /// Stream derivation: splitmix64 chain keyed by seed ^ fnv1a64(name).
  static Xoshiro256StarStar stream(std::uint64_t seed, std::string_view name) {
    SplitMix64 sm{seed ^ fnv1a64(name)};
    std::array<std::uint64_t, 4> s{};
    for (auto& w : s) w = sm.next();
    if ((s[0] | s[1] | s[2] | s[3]) == 0) s[0] = 1;
    return Xoshiro256StarStar(s);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform draw on (0, 1]: 53-bit mantissa, zero excluded so logs stay
  /// finite.
  double uniform01() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Inverse-CDF exponential variate with the given rate.
  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  const std::array<std::uint64_t, 4>& state() const { return s_; }

  friend bool operator==(const Xoshiro256StarStar&,
                         const Xoshiro256StarStar&) = default;

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_;
};

inline void to_json(nlohmann::json& j, const Xoshiro256StarStar& g) {
  j = g.state();
}

inline void from_json(const nlohmann::json& j, Xoshiro256StarStar& g) {
  g = Xoshiro256StarStar(j.get<std::array<std::uint64_t, 4>>());
}

}  // namespace procflow
