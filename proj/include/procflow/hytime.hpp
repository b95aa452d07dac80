#pragma once

#include <cassert>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include <json.hpp>

namespace procflow {

/// A point on the superdense (hyperreal) time axis: a real instant plus an
/// integer count of infinitesimals (eps). The order is lexicographic, so
/// (r, k) < (r + d, 0) for every real d > 0 and every finite k, while
/// (r, k) + eps = (r, k + 1) stays below any later real instant.
///
/// +infinity is representable (real part inf, eps pinned to 0); it is the
/// "never scheduled" value and absorbs any addition.
struct HyTime {
  double real = 0.0;
  std::int64_t eps = 0;

  constexpr HyTime() = default;
  constexpr HyTime(double r, std::int64_t k = 0)
      : real(r), eps(r == std::numeric_limits<double>::infinity() ? 0 : k) {
    assert(!std::isnan(r));
  }

  static constexpr HyTime infinity() {
    return HyTime(std::numeric_limits<double>::infinity());
  }
  /// One infinitesimal: (0, 1).
  static constexpr HyTime epsilon() { return HyTime(0.0, 1); }
  static constexpr HyTime zero() { return HyTime(0.0, 0); }

  constexpr bool is_infinite() const {
    return real == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_finite() const { return !is_infinite(); }

  friend constexpr bool operator==(const HyTime&, const HyTime&) = default;

  friend constexpr std::strong_ordering operator<=>(const HyTime& a,
                                                    const HyTime& b) {
    if (a.real < b.real) return std::strong_ordering::less;
    if (a.real > b.real) return std::strong_ordering::greater;
    return a.eps <=> b.eps;
  }

  /// Componentwise addition; an infinite operand absorbs.
  friend constexpr HyTime operator+(const HyTime& a, const HyTime& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return HyTime(a.real + b.real, a.eps + b.eps);
  }

  /// Componentwise difference. Only meaningful for finite b; an infinite
  /// minuend stays infinite.
  friend constexpr HyTime operator-(const HyTime& a, const HyTime& b) {
    if (a.is_infinite()) return infinity();
    return HyTime(a.real - b.real, a.eps - b.eps);
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    std::string s = std::to_string(real);
    if (eps != 0) s += "+" + std::to_string(eps) + "e";
    return s;
  }
};

inline const HyTime& min(const HyTime& a, const HyTime& b) {
  return b < a ? b : a;
}

/// Trace form: {"t": <real>, "eps": <integer>}, "inf" literal for +infinity.
inline void to_json(nlohmann::json& j, const HyTime& t) {
  j = nlohmann::json::object();
  if (t.is_infinite()) {
    j["t"] = "inf";
  } else {
    j["t"] = t.real;
  }
  j["eps"] = t.eps;
}

inline void from_json(const nlohmann::json& j, HyTime& t) {
  if (j.at("t").is_string()) {
    t = HyTime::infinity();
  } else {
    t = HyTime(j.at("t").get<double>(), j.at("eps").get<std::int64_t>());
  }
}

}  // namespace procflow
