#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primedyn/error.hpp"
#include "primedyn/rng.hpp"
#include "primedyn/symbol_sequence.hpp"

namespace primedyn {

enum class ChaoticMapKind { Logistic, Tent, BinaryShift, Gauss };

inline std::string_view map_name(ChaoticMapKind kind) {
  switch (kind) {
    case ChaoticMapKind::Logistic: return "logistic";
    case ChaoticMapKind::Tent: return "tent";
    case ChaoticMapKind::BinaryShift: return "shift";
    case ChaoticMapKind::Gauss: return "gauss";
  }
  return "unknown";
}

inline ChaoticMapKind parse_map_kind(std::string_view name) {
  if (name == "logistic") return ChaoticMapKind::Logistic;
  if (name == "tent") return ChaoticMapKind::Tent;
  if (name == "shift" || name == "binary-shift") return ChaoticMapKind::BinaryShift;
  if (name == "gauss") return ChaoticMapKind::Gauss;
  throw DomainError("unknown map '" + std::string(name) + "'");
}

struct OrbitSpec {
  ChaoticMapKind map = ChaoticMapKind::Logistic;
  std::optional<double> x0;  // drawn from the seed when absent
  std::size_t length = 1;
  std::uint64_t seed = 0;
};

/// Uniform point of (0,1) whose 53-bit binary expansion does not terminate early.
inline double default_initial_condition(std::uint64_t seed) {
  Xoshiro256 rng(seed);
  for (;;) {
    const std::uint64_t k = rng() >> 11;
    if (k & 1) return static_cast<double>(k) * 0x1.0p-53;
  }
}

/// Orbit x_0, F(x_0), ..., of the selected map.
///
/// The logistic and Gauss maps are iterated directly in double precision.
/// Doubling maps lose one bit per step in floating point, so the tent orbit is
/// obtained from a logistic orbit through the conjugacy x = (2/pi) asin(sqrt y)
/// and the shift orbit is read off a random bit stream, 53 bits per iterate.
inline std::vector<double> iterate_map(const OrbitSpec& spec) {
  require(spec.length >= 1, "orbit length must be positive");
  const double x0 = spec.x0 ? *spec.x0 : default_initial_condition(spec.seed);
  require(x0 >= 0.0 && x0 <= 1.0, "x0 must lie in [0, 1]");

  std::vector<double> orbit(spec.length);
  switch (spec.map) {
    case ChaoticMapKind::Logistic: {
      double x = x0;
      for (auto& v : orbit) {
        v = x;
        x = 4.0 * x * (1.0 - x);
      }
      break;
    }
    case ChaoticMapKind::Tent: {
      const double s = std::sin(std::numbers::pi / 2 * x0);
      double y = s * s;
      for (auto& v : orbit) {
        v = std::clamp(2.0 / std::numbers::pi * std::asin(std::sqrt(y)), 0.0, 1.0);
        y = 4.0 * y * (1.0 - y);
      }
      if (spec.x0) orbit.front() = x0;
      break;
    }
    case ChaoticMapKind::BinaryShift: {
      // x_t = 0.b_t b_{t+1} ... b_{t+52}; x0 is ignored, the orbit is the seed's.
      Xoshiro256 rng(spec.seed);
      std::vector<std::uint8_t> bits(spec.length + 52);
      std::uint64_t word = 0;
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (63 - i % 64)) & 1u);
      }
      std::uint64_t window = 0;
      for (std::size_t i = 0; i < 53; ++i) window = (window << 1) | bits[i];
      const std::uint64_t mask = (std::uint64_t{1} << 53) - 1;
      for (std::size_t t = 0; t < spec.length; ++t) {
        orbit[t] = static_cast<double>(window) * 0x1.0p-53;
        if (t + 53 < bits.size()) window = ((window << 1) | bits[t + 53]) & mask;
      }
      break;
    }
    case ChaoticMapKind::Gauss: {
      double x = x0;
      for (auto& v : orbit) {
        v = x;
        if (x == 0.0) {
          x = 0.0;
        } else {
          const double inv = 1.0 / x;
          x = inv - std::floor(inv);
        }
      }
      break;
    }
  }
  return orbit;
}

/// Homogeneous p-cell partition of [0,1]: symbol floor(p x), with x = 1 in the last cell.
inline SymbolSequence symbolize_orbit(std::span<const double> orbit, int p,
                                      std::string name = "orbit") {
  require(p >= 2 && p <= 256, "partition size must be in [2, 256]");
  require(!orbit.empty(), "orbit is empty");
  SymbolSequence seq;
  seq.alphabet_size = p;
  seq.provenance = provenance::ChaoticMap{std::move(name), p};
  seq.symbols.reserve(orbit.size());
  for (double x : orbit) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("orbit value outside [0, 1]");
    const auto cell = static_cast<int>(std::floor(p * x));
    seq.symbols.push_back(static_cast<Symbol>(std::min(cell, p - 1)));
  }
  return seq;
}

}  // namespace primedyn
