#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbtpq/common.hpp"

namespace cbtpq {

// One scripted queue operation. Scripts exist so a failing differential
// run is reproducible outside the harness: every op prints as one ASCII
// line and parses back exactly.
struct Op {
  enum class Kind : char { update = 'U', remove = 'R', insert = 'I' };

  Kind kind = Kind::update;
  std::uint64_t index = 0;    // update/remove target slot
  priority_t priority = 0.0;  // update/insert value
  event_id_t id = 0;          // insert only

  friend bool operator==(const Op&, const Op&) = default;
};

namespace detail {
// %.17g survives a text round trip for every finite double.
inline std::string format_priority(priority_t p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", p);
  return buf;
}
}  // namespace detail

inline std::string to_replay_line(const Op& op) {
  switch (op.kind) {
    case Op::Kind::update:
      return "U " + std::to_string(op.index) + " " +
             detail::format_priority(op.priority);
    case Op::Kind::remove:
      return "R " + std::to_string(op.index);
    case Op::Kind::insert:
      return "I " + detail::format_priority(op.priority) + " " +
             std::to_string(op.id);
  }
  throw std::logic_error("to_replay_line: unknown op kind");
}

inline std::string to_replay_text(const std::vector<Op>& ops) {
  std::string out;
  for (const Op& op : ops) {
    out += to_replay_line(op);
    out += '\n';
  }
  return out;
}

inline std::vector<Op> parse_replay_text(std::istream& in) {
  std::vector<Op> ops;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;  // blank or comment line

    const auto fail = [&](const char* what) {
      throw std::runtime_error("replay line " + std::to_string(line_no) +
                               ": " + what);
    };
    Op op;
    if (tag == "U") {
      op.kind = Op::Kind::update;
      if (!(ls >> op.index >> op.priority)) fail("expected U <index> <priority>");
    } else if (tag == "R") {
      op.kind = Op::Kind::remove;
      if (!(ls >> op.index)) fail("expected R <index>");
    } else if (tag == "I") {
      op.kind = Op::Kind::insert;
      if (!(ls >> op.priority >> op.id)) fail("expected I <priority> <id>");
    } else {
      fail("unknown op tag");
    }
    std::string extra;
    if (ls >> extra) fail("trailing tokens");
    ops.push_back(op);
  }
  return ops;
}

inline std::vector<Op> parse_replay_text(const std::string& text) {
  std::istringstream in(text);
  return parse_replay_text(in);
}

}  // namespace cbtpq
