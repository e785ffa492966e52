#ifndef RFTT_LINE_SOLVER_H
#define RFTT_LINE_SOLVER_H

#include <vector>

#include "rftt/instance.h"
#include "rftt/solve_report.h"

namespace rftt {

inline constexpr Turnover halfline_default_bound = 512;
inline constexpr std::int64_t line_period_cap = std::int64_t{1} << 16;

struct HalflineResult {
  Rational one_way;  // cheapest average reach per day
  Rational value;    // round-trip average, twice one_way
  std::int64_t period = 1;
  // reach[d - 1] = number of input positions served on day d (a prefix).
  std::vector<std::size_t> reach;
  // Positions kept after dropping every vertex that a farther one with no
  // larger turnover already covers.
  std::vector<std::size_t> kept;
  // phi[i][k]: cheapest one-way cost of k days squeezed between two days
  // that reach the i-th kept vertex, keeping the first i kept vertices
  // feasible.
  std::vector<std::vector<Rational>> phi;
};

// Clients on one side of the depot, by nondecreasing distance.
HalflineResult halfline_dp(const std::vector<Rational>& distances,
                           const std::vector<Turnover>& turnovers,
                           Turnover bound = halfline_default_bound);

Solution solve_minavg_line(const Instance& instance, Turnover bound = halfline_default_bound);

} // namespace rftt

#endif
