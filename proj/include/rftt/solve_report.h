#ifndef RFTT_SOLVE_REPORT_H
#define RFTT_SOLVE_REPORT_H

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rftt/rational.h"
#include "rftt/schedule.h"

namespace rftt {

enum class Objective { min_avg, min_max };

std::string_view to_string(Objective o);
Objective objective_from_string(std::string_view s);

struct SolveReport {
  std::string algorithm;
  Objective objective = Objective::min_avg;
  Rational avg;
  Rational max;
  std::optional<Rational> lower_bound;
  double runtime_ms = 0.0;
  // Named counters exposed for invariant checks (call counts, class counts...).
  std::map<std::string, std::int64_t> diagnostics;

  const Rational& cost() const { return objective == Objective::min_avg ? avg : max; }
};

struct Solution {
  Schedule schedule;
  SolveReport report;
  std::optional<CompactSchedule> compact;
};

// Fills avg/max of the report from the schedule.
void fill_costs(const Instance& instance, const DistanceMatrix& dist, Solution& solution);

} // namespace rftt

#endif
