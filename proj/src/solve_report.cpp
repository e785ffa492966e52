#include "rftt/solve_report.h"

namespace rftt {

std::string_view to_string(Objective o) {
  return o == Objective::min_avg ? "min-avg" : "min-max";
}

Objective objective_from_string(std::string_view s) {
  if (s == "min-avg") {
    return Objective::min_avg;
  }
  if (s == "min-max") {
    return Objective::min_max;
  }
  throw InputError("unknown objective '" + std::string(s) + "'");
}

void fill_costs(const Instance& instance, const DistanceMatrix& dist, Solution& solution) {
  const Evaluation ev = evaluate(instance, solution.schedule, dist);
  solution.report.avg = ev.avg;
  solution.report.max = ev.max;
}

} // namespace rftt
