#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>

#include "cbtpq/common.hpp"

namespace cbtpq {

// The three priority-increment distributions driven by the hold
// benchmark. Each has unit mean, so queue content drifts upward at the
// same rate regardless of which one is active.
enum class PriorityDistribution { exponential, uniform, biased };

inline constexpr PriorityDistribution all_distributions[] = {
    PriorityDistribution::exponential,
    PriorityDistribution::uniform,
    PriorityDistribution::biased,
};

inline const char* name_of(PriorityDistribution d) {
  switch (d) {
    case PriorityDistribution::exponential:
      return "exponential";
    case PriorityDistribution::uniform:
      return "uniform";
    case PriorityDistribution::biased:
      return "biased";
  }
  return "?";
}

inline std::optional<PriorityDistribution> parse_distribution(
    std::string_view s) {
  if (s == "exponential") return PriorityDistribution::exponential;
  if (s == "uniform") return PriorityDistribution::uniform;
  if (s == "biased") return PriorityDistribution::biased;
  return std::nullopt;
}

// Maps a uniform draw R from the open interval (0,1) to an increment.
// The interval is open so the logarithm stays finite.
inline double sample(PriorityDistribution d, double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::domain_error("sample: R must lie in the open interval (0,1)");
  switch (d) {
    case PriorityDistribution::exponential:
      return -std::log(r);
    case PriorityDistribution::uniform:
      return 2.0 * r;
    case PriorityDistribution::biased:
      return 0.9 + 0.2 * r;
  }
  throw std::domain_error("sample: unknown distribution");
}

// Uniform draw from (0,1): 53 mantissa bits, with the single zero outcome
// rejected. The upper bound is already exclusive.
template <class Rng>
double open_unit(Rng& rng) {
  for (;;) {
    const double r =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (r > 0.0) return r;
  }
}

namespace detail {
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

// Derives an independent generator for (seed, stream). The benchmark
// harness uses one stream per repeat so repeats are decorrelated while
// the whole run stays reproducible from a single seed.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ull * (stream + 1));
  return std::mt19937_64(detail::splitmix64_next(state));
}

}  // namespace cbtpq
