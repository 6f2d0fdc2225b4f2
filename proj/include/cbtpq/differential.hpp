#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cbtpq/common.hpp"
#include "cbtpq/pqcore.hpp"
#include "cbtpq/script.hpp"

namespace cbtpq {

struct DifferentialResult {
  bool passed = true;
  std::size_t ops_executed = 0;
  std::string failure;  // describes the first divergence

  explicit operator bool() const { return passed; }
};

// Shape of a generated script: update-heavy, with the remainder split
// between remove and insert where the structure supports them. Removal
// stops at min_size keys; insertion stops at max_size (0 = capacity).
struct ScriptConfig {
  std::size_t op_count = 1000;
  std::uint64_t seed = 1;
  double update_weight = 0.7;
  std::size_t min_size = 1;
  std::size_t max_size = 0;
};

// Seeds the oracle with the structure's current active keys.
template <MinQueue Q>
OracleQueue oracle_snapshot(const Q& q) {
  OracleQueue oracle;
  for (std::size_t i = 0; i < q.slot_count(); ++i)
    if (q.is_active_slot(i)) oracle.insert(q.priority_at(i), q.id_at(i));
  return oracle;
}

namespace detail {

inline std::string format_mismatch(priority_t got, priority_t want) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "peek_min %.17g, oracle %.17g", got, want);
  return buf;
}

// The comparison is on priorities, never winner indices: distinct layouts
// may legitimately break ties toward different holders.
template <MinQueue Q>
std::optional<std::string> divergence(const Q& q, const OracleQueue& oracle) {
  if (q.active_count() != oracle.active_count())
    return "active count " + std::to_string(q.active_count()) + ", oracle " +
           std::to_string(oracle.active_count());
  if (oracle.active_count() == 0) return std::nullopt;
  const priority_t got = q.peek_min().priority;
  const priority_t want = oracle.min_priority();
  if (got != want) return format_mismatch(got, want);
  return std::nullopt;
}

template <MinQueue Q>
std::size_t draw_active_slot(const Q& q, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, q.slot_count() - 1);
  for (;;) {
    const std::size_t i = pick(rng);
    if (q.is_active_slot(i)) return i;
  }
}

// Applies one op to structure and oracle in lockstep, bridging positional
// ops to the oracle through the slot's id before mutation (the oracle
// knows nothing about relocation protocols).
template <MinQueue Q>
bool apply_op(Q& q, OracleQueue& oracle, const Op& op, std::string& error) {
  switch (op.kind) {
    case Op::Kind::update: {
      if (op.index >= q.slot_count() || !q.is_active_slot(op.index)) {
        error = "update targets an inactive slot";
        return false;
      }
      const event_id_t id = q.id_at(op.index);
      q.update_key(op.index, op.priority);
      oracle.update_by_id(id, op.priority);
      return true;
    }
    case Op::Kind::remove: {
      if constexpr (PhysicallyShrinks<Q>) {
        if (op.index >= q.slot_count() || !q.is_active_slot(op.index)) {
          error = "remove targets an inactive slot";
          return false;
        }
        const event_id_t id = q.id_at(op.index);
        q.remove(op.index);
        oracle.remove_by_id(id);
        return true;
      } else {
        error = "structure does not support remove";
        return false;
      }
    }
    case Op::Kind::insert: {
      if constexpr (Grows<Q>) {
        q.insert(op.priority, op.id);
        oracle.insert(op.priority, op.id);
        return true;
      } else {
        error = "structure does not support insert";
        return false;
      }
    }
  }
  error = "unknown op kind";
  return false;
}

template <MinQueue Q>
std::size_t grow_limit(const Q& q, const ScriptConfig& cfg) {
  if constexpr (Grows<Q>) {
    const std::size_t cap = q.capacity();
    return cfg.max_size == 0 ? cap : std::min(cfg.max_size, cap);
  } else {
    (void)q;
    (void)cfg;
    return 0;
  }
}

}  // namespace detail

// Generates ops from the seed and executes them against the oracle in
// lockstep, checking peek_min after every op. Optionally records the ops
// in replay form, the failing op included.
template <MinQueue Q>
DifferentialResult run_random_ops(Q& q, const ScriptConfig& cfg,
                                  std::vector<Op>* recorded = nullptr) {
  DifferentialResult res;
  OracleQueue oracle = oracle_snapshot(q);
  if (auto d = detail::divergence(q, oracle)) {
    res.passed = false;
    res.failure = "initial state: " + *d;
    return res;
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> priority_draw(0.0, 1.0e6);
  event_id_t next_id = 0;
  for (std::size_t i = 0; i < q.slot_count(); ++i)
    if (q.is_active_slot(i)) next_id = std::max(next_id, q.id_at(i) + 1);

  for (std::size_t t = 0; t < cfg.op_count; ++t) {
    const std::size_t cur = q.active_count();
    const bool can_update = cur >= 1;
    bool can_remove = false;
    if constexpr (PhysicallyShrinks<Q>) can_remove = cur > cfg.min_size;
    const bool can_insert = cur < detail::grow_limit(q, cfg);

    Op op;
    const double u = unit(rng);
    if (can_update && (u < cfg.update_weight || (!can_remove && !can_insert))) {
      op.kind = Op::Kind::update;
      op.index = detail::draw_active_slot(q, rng);
      op.priority = priority_draw(rng);
    } else if (can_remove && (!can_insert || unit(rng) < 0.5)) {
      op.kind = Op::Kind::remove;
      op.index = detail::draw_active_slot(q, rng);
    } else if (can_insert) {
      op.kind = Op::Kind::insert;
      op.priority = priority_draw(rng);
      op.id = next_id++;
    } else {
      res.passed = false;
      res.failure = "op " + std::to_string(t) + ": no legal op (config deadlock)";
      return res;
    }

    if (recorded) recorded->push_back(op);
    std::string err;
    if (!detail::apply_op(q, oracle, op, err)) {
      res.passed = false;
      res.failure = "op " + std::to_string(t) + " (" + to_replay_line(op) +
                    "): " + err;
      return res;
    }
    res.ops_executed = t + 1;
    if (auto d = detail::divergence(q, oracle)) {
      res.passed = false;
      res.failure = "op " + std::to_string(t) + " (" + to_replay_line(op) +
                    "): " + *d;
      return res;
    }
  }
  return res;
}

// Replays a pre-recorded script with the same lockstep checks.
template <MinQueue Q>
DifferentialResult replay_ops(Q& q, const std::vector<Op>& ops) {
  DifferentialResult res;
  OracleQueue oracle = oracle_snapshot(q);
  if (auto d = detail::divergence(q, oracle)) {
    res.passed = false;
    res.failure = "initial state: " + *d;
    return res;
  }
  for (std::size_t t = 0; t < ops.size(); ++t) {
    std::string err;
    if (!detail::apply_op(q, oracle, ops[t], err)) {
      res.passed = false;
      res.failure = "op " + std::to_string(t) + " (" + to_replay_line(ops[t]) +
                    "): " + err;
      return res;
    }
    res.ops_executed = t + 1;
    if (auto d = detail::divergence(q, oracle)) {
      res.passed = false;
      res.failure = "op " + std::to_string(t) + " (" + to_replay_line(ops[t]) +
                    "): " + *d;
      return res;
    }
  }
  return res;
}

}  // namespace cbtpq
