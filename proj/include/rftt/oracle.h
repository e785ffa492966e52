#ifndef RFTT_ORACLE_H
#define RFTT_ORACLE_H

#include <cstdint>
#include <vector>

#include "rftt/instance.h"
#include "rftt/schedule.h"

namespace rftt {

inline constexpr std::int64_t oracle_state_limit = 1'000'000;
inline constexpr std::size_t oracle_client_limit = 12;
// Transitions kept in memory across the reachable configuration graph.
inline constexpr std::int64_t oracle_edge_limit = 8'000'000;

struct OracleResult {
  Rational value;
  Schedule schedule; // one cycle of an optimal play
  std::int64_t states = 0;
  std::int64_t edges = 0;
};

// Exact optimum over periodic schedules. A state holds each client's days
// left before its deadline; a day's visit set must contain every client
// whose slack is 1. Only states reachable from the fresh state (all slacks
// full) are built. That loses nothing: a client visited in a cycle has its
// slack reset there, so replaying the cycle's visit sets from the fresh
// state, which dominates every state pointwise, lands on the cycle.
OracleResult exact_minavg(const Instance& instance);
OracleResult exact_minmax(const Instance& instance);

struct PinwheelResult {
  bool feasible = false;
  std::vector<int> witness; // job index per day of one period, -1 when idle
  std::int64_t states = 0;
};

PinwheelResult pinwheel_feasible(const std::vector<std::int64_t>& periods);

} // namespace rftt

#endif
