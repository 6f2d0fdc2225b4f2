#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace cbtpq {

// Filesystem trouble, as opposed to bad configuration; the CLI maps the
// two onto different exit codes.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using priority_t = double;
using event_id_t = std::uint64_t;

// Node registries and host maps store key indices in 32 bits to keep the
// auxiliary arrays compact. The cap below keeps i + N and 2i + 1 inside
// that width for every structure in the library.
using slot_t = std::uint32_t;

inline constexpr std::size_t max_key_count = std::size_t{1} << 31;

// Dismissed keys and joker padding are parked at this priority, so user
// keys must stay strictly below it. NaNs fail the strict check too.
inline constexpr priority_t sentinel_priority =
    std::numeric_limits<priority_t>::max();

inline constexpr event_id_t joker_event_id =
    std::numeric_limits<event_id_t>::max();

inline bool usable_priority(priority_t p) { return p < sentinel_priority; }

// Result of peeking at the tournament root: which key slot currently wins
// and the priority stored there.
struct Winner {
  std::size_t index;
  priority_t priority;
};

}  // namespace cbtpq
