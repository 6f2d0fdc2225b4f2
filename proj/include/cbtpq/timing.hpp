#pragma once

#include <chrono>
#include <cstdint>
#include <ratio>
#include <stdexcept>

namespace cbtpq {

// Nanosecond timestamps from the platform's monotonic clock. Wall clocks
// fold NTP slews into measurements, so the harness refuses to run rather
// than silently fall back when no steady sub-microsecond clock exists.
class MonotonicTimer {
 public:
  MonotonicTimer() { require_monotonic(); }

  static void require_monotonic() {
    if (!std::chrono::steady_clock::is_steady)
      throw std::runtime_error(
          "MonotonicTimer: no steady clock on this platform");
    using period = std::chrono::steady_clock::period;
    if (std::ratio_greater<period, std::micro>::value)
      throw std::runtime_error(
          "MonotonicTimer: steady clock coarser than 1us");
  }

  static std::uint64_t now_ns() {
    const auto t = std::chrono::steady_clock::now().time_since_epoch();
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t).count());
  }
};

}  // namespace cbtpq
