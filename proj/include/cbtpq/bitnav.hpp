#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>

// Bit-level navigation over the implicit complete-binary-tree node
// numbering. Nodes are numbered 1 (root), 2..3, 4..7, ... so a sibling is
// one XOR away and a parent is one shift away. Bit positions are 1-indexed
// throughout: position 1 is the least significant bit.

namespace cbtpq {

inline unsigned lssb_position(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("lssb_position: zero has no set bit");
  return 1u + static_cast<unsigned>(std::countr_zero(x));
}

inline unsigned mssb_position(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("mssb_position: zero has no set bit");
  return static_cast<unsigned>(std::bit_width(x));
}

inline std::uint64_t global_sister(std::uint64_t n) { return n ^ 1u; }

inline std::uint64_t global_parent(std::uint64_t n) { return n >> 1; }

}  // namespace cbtpq
